//! Library half of the `quadmops` command-line tool: config ingestion, the
//! check runner, and report emission. The binary in `main.rs` is a thin
//! wrapper so the whole pipeline is testable in-process.

pub mod config;
pub mod emit;
pub mod runner;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The config file is malformed or violates a constraint; the path names
    /// the offending field.
    #[error("invalid config at `{path}`: {message}")]
    ConfigInvalid { path: String, message: String },

    #[error("io failure: {0}")]
    IoFailure(#[from] std::io::Error),

    #[error(transparent)]
    Core(#[from] quadmops::Error),
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl ToString) -> Self {
        CliError::ConfigInvalid {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

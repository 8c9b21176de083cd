use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use quadmops::quadratic::xu_case_study;
use quadmops::rational::parse_rational;
use quadmops::MopsFamily;
use quadmops_cli::config::{OutputFormat, RunConfig};
use quadmops_cli::emit::{compute_document, render_report, render_study, write_output};
use quadmops_cli::runner::{case_study_mu, run};
use quadmops_cli::{CliError, CliResult};

/// Exact construction and verification of bivariate monic orthogonal
/// polynomial systems and their quadratic decomposition.
#[derive(Parser)]
#[command(name = "quadmops", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the MOPS of the configured weight and dump slices, Gram
    /// matrices and recurrence coefficients as JSON.
    Compute {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's max_degree.
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite and emit a report; exits 0 only if every
    /// check record passes.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// json, csv or latex (default from the config's output section).
        #[arg(long)]
        format: Option<String>,
    },
    /// Ball-simplex case study: verify the even-even identification and
    /// certify the three leftover families, with LaTeX tables.
    Casestudy {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Ball exponent as "p/q" (> -1); overrides the config weight.
        #[arg(long)]
        mu: Option<String>,
        /// Case-study degree (ball polynomials to twice this degree).
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// json, csv or latex (default latex).
        #[arg(long)]
        format: Option<String>,
    },
}

fn parse_format(flag: Option<String>, fallback: OutputFormat) -> CliResult<OutputFormat> {
    match flag {
        None => Ok(fallback),
        Some(s) => OutputFormat::from_str(&s).map_err(|e| CliError::config("--format", e)),
    }
}

fn cmd_compute(
    config: PathBuf,
    max_degree: Option<usize>,
    out: Option<PathBuf>,
) -> CliResult<bool> {
    let mut cfg = RunConfig::from_file(&config)?;
    if let Some(n) = max_degree {
        cfg.max_degree = n;
    }
    let (functional, _) = cfg.validate()?;
    let fam = MopsFamily::build(&functional, cfg.max_degree)?;
    let doc = compute_document(&fam)?;
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    write_output(&text, out.or(cfg.output.path).as_deref())?;
    Ok(true)
}

fn cmd_verify(
    config: PathBuf,
    max_degree: Option<usize>,
    out: Option<PathBuf>,
    format: Option<String>,
) -> CliResult<bool> {
    let mut cfg = RunConfig::from_file(&config)?;
    if let Some(n) = max_degree {
        cfg.max_degree = n;
    }
    let format = parse_format(format, cfg.output.format)?;
    let report = run(&cfg)?;
    let text = render_report(&report, format);
    write_output(&text, out.or(cfg.output.path.clone()).as_deref())?;
    Ok(report.passed)
}

fn cmd_casestudy(
    config: Option<PathBuf>,
    mu: Option<String>,
    max_degree: Option<usize>,
    out: Option<PathBuf>,
    format: Option<String>,
) -> CliResult<bool> {
    let cfg = match &config {
        Some(path) => Some(RunConfig::from_file(path)?),
        None => None,
    };
    let mu = match mu {
        Some(s) => parse_rational(&s).map_err(|e| CliError::config("--mu", e))?,
        None => match &cfg {
            Some(c) => case_study_mu(c)?,
            None => parse_rational("0").unwrap(),
        },
    };
    let depth = max_degree
        .or_else(|| cfg.as_ref().map(|c| c.max_degree / 2))
        .unwrap_or(4)
        .max(1);
    let format = parse_format(
        format,
        cfg.as_ref()
            .map(|c| c.output.format)
            .unwrap_or(OutputFormat::Latex),
    )?;
    let study = xu_case_study(&mu, depth)?;
    let text = render_study(&study, format);
    let cfg_path = cfg.and_then(|c| c.output.path);
    write_output(&text, out.or(cfg_path).as_deref())?;
    Ok(study.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute {
            config,
            max_degree,
            out,
        } => cmd_compute(config, max_degree, out),
        Command::Verify {
            config,
            max_degree,
            out,
            format,
        } => cmd_verify(config, max_degree, out, format),
        Command::Casestudy {
            config,
            mu,
            max_degree,
            out,
            format,
        } => cmd_casestudy(config, mu, max_degree, out, format),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

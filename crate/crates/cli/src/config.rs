//! Run configuration: a JSON document naming the weight, the depth, the
//! checks to run, and where the report goes. All rationals are `"p/q"`
//! strings; floats never appear anywhere in the pipeline.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use quadmops::moments::{WeightFamily, WeightSpec};
use quadmops::MomentFunctional;

use crate::{CliError, CliResult};

/// Every check the runner knows, in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    JlIdentities,
    Orthogonality,
    Decomposition,
    ConverseRoundtrip,
    ChristoffelConnection,
    Backlund,
    GammaHat,
    BigFamilyRelations,
    LuFactorization,
    XuCaseStudy,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::JlIdentities,
        CheckName::Orthogonality,
        CheckName::Decomposition,
        CheckName::ConverseRoundtrip,
        CheckName::ChristoffelConnection,
        CheckName::Backlund,
        CheckName::GammaHat,
        CheckName::BigFamilyRelations,
        CheckName::LuFactorization,
        CheckName::XuCaseStudy,
    ];

    pub fn token(self) -> &'static str {
        match self {
            CheckName::JlIdentities => "jl_identities",
            CheckName::Orthogonality => "orthogonality",
            CheckName::Decomposition => "decomposition",
            CheckName::ConverseRoundtrip => "converse_roundtrip",
            CheckName::ChristoffelConnection => "christoffel_connection",
            CheckName::Backlund => "backlund",
            CheckName::GammaHat => "gamma_hat",
            CheckName::BigFamilyRelations => "big_family_relations",
            CheckName::LuFactorization => "lu_factorization",
            CheckName::XuCaseStudy => "xu_case_study",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for CheckName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.token() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Latex,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "latex" => Ok(OutputFormat::Latex),
            other => Err(format!("unknown format `{other}` (json|csv|latex)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputConfig {
    pub format: OutputFormat,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub path: Option<PathBuf>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            format: OutputFormat::Json,
            path: None,
        }
    }
}

/// The raw JSON shape; [`RunConfig::validate`] turns it into something the
/// runner trusts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub weight: WeightSpec,
    pub max_degree: usize,
    /// Check tokens, or the single entry `"all"`. Missing means all.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checks: Option<Vec<String>>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::config("<config>", e))
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Resolve the check list, applying the `"all"` shorthand.
    pub fn resolved_checks(&self) -> CliResult<Vec<CheckName>> {
        match &self.checks {
            None => Ok(CheckName::ALL.to_vec()),
            Some(list) => {
                if list.is_empty() {
                    return Err(CliError::config("checks", "must not be empty"));
                }
                if list.len() == 1 && list[0] == "all" {
                    return Ok(CheckName::ALL.to_vec());
                }
                let mut out = Vec::with_capacity(list.len());
                for (i, token) in list.iter().enumerate() {
                    let name = token
                        .parse::<CheckName>()
                        .map_err(|e| CliError::config(format!("checks[{i}]"), e))?;
                    if !out.contains(&name) {
                        out.push(name);
                    }
                }
                // Dependency order regardless of the order requested.
                out.sort();
                Ok(out)
            }
        }
    }

    /// Check the structural invariants and materialize the weight.
    pub fn validate(&self) -> CliResult<(MomentFunctional, Vec<CheckName>)> {
        if self.max_degree < 1 {
            return Err(CliError::config("max_degree", "must be at least 1"));
        }
        let checks = self.resolved_checks()?;
        let functional = self.weight.build().map_err(|e| {
            let field = match self.weight.family {
                WeightFamily::Ball => "weight.mu",
                WeightFamily::Simplex => "weight.a/b/c",
                WeightFamily::Custom => "weight.moments",
                WeightFamily::SquareLegendre => "weight",
            };
            CliError::config(field, e)
        })?;
        Ok((functional, checks))
    }
}

//! Executes the requested checks in dependency order and assembles the
//! report. A failing identity or a module error never aborts the run: every
//! independent check still executes, so one report localizes all violations.

use std::cell::OnceCell;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use quadmops::backlund::{
    build_small_families, verify_backlund_equivalence, verify_big_family_relations,
    verify_block_factorization, verify_christoffel_connections, verify_gamma_hat_relations,
    GammaSequence,
};
use quadmops::moments::WeightFamily;
use quadmops::quadratic::{assemble_symmetric, decompose, xu_case_study, QuadDecomposition};
use quadmops::rational::{parse_rational, rat_int, Rational};
use quadmops::report::all_passed;
use quadmops::structmat::verify_jl_identities;
use quadmops::{CheckRecord, Error, FamilyTag, MomentFunctional, MopsFamily};

use crate::config::{CheckName, RunConfig};
use crate::CliResult;

/// All records produced by one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckGroup {
    pub name: String,
    pub passed: bool,
    pub records: Vec<CheckRecord>,
}

/// The full run report. `timing_ms` is informational and explicitly outside
/// the determinism contract; everything else is a pure function of the
/// config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub weight: String,
    pub max_degree: usize,
    pub passed: bool,
    pub checks: Vec<CheckGroup>,
    pub timing_ms: u128,
}

impl RunReport {
    pub fn records(&self) -> impl Iterator<Item = (&str, &CheckRecord)> {
        self.checks
            .iter()
            .flat_map(|g| g.records.iter().map(move |r| (g.name.as_str(), r)))
    }
}

/// Lazily built shared state; every check pulls what it needs and an error
/// anywhere surfaces as a failed record in each dependent check.
struct Prepared {
    functional: MomentFunctional,
    max_degree: usize,
    half: usize,
    symfam: OnceCell<Result<MopsFamily, Error>>,
    gammas: OnceCell<Result<GammaSequence, Error>>,
    smalls: OnceCell<Result<[MopsFamily; 4], Error>>,
    dec: OnceCell<Result<QuadDecomposition, Error>>,
}

impl Prepared {
    fn new(functional: MomentFunctional, max_degree: usize) -> Self {
        Prepared {
            functional,
            max_degree,
            half: max_degree / 2,
            symfam: OnceCell::new(),
            gammas: OnceCell::new(),
            smalls: OnceCell::new(),
            dec: OnceCell::new(),
        }
    }

    /// Deep enough for every consumer: the plain orthogonality check wants
    /// `max_degree`, the converse round trip `max_degree + 1`, and the Γ
    /// sequence `2·half + 3`.
    fn sym_depth(&self) -> usize {
        (self.max_degree + 1).max(2 * self.half + 3)
    }

    fn symfam(&self) -> Result<&MopsFamily, Error> {
        self.symfam
            .get_or_init(|| MopsFamily::build(&self.functional, self.sym_depth()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn gammas(&self) -> Result<&GammaSequence, Error> {
        self.gammas
            .get_or_init(|| GammaSequence::build(self.symfam()?, self.sym_depth()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn smalls(&self) -> Result<&[MopsFamily; 4], Error> {
        self.smalls
            .get_or_init(|| build_small_families(&self.functional, self.half + 1))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn dec(&self) -> Result<&QuadDecomposition, Error> {
        self.dec
            .get_or_init(|| decompose(self.symfam()?, self.half))
            .as_ref()
            .map_err(Clone::clone)
    }
}

fn run_check(prep: &Prepared, cfg: &RunConfig, check: CheckName) -> Vec<CheckRecord> {
    let result: Result<Vec<CheckRecord>, Error> = match check {
        CheckName::JlIdentities => Ok(verify_jl_identities(prep.max_degree.max(12))),
        CheckName::Orthogonality => prep
            .symfam()
            .and_then(|fam| fam.verify_orthogonality_up_to(prep.max_degree)),
        CheckName::Decomposition => prep.dec().and_then(|dec| {
            let mut records = dec.reconstruction_records();
            records.extend(dec.gram_shrink_records()?);
            records.extend(dec.weight_identification_records()?);
            for tag in FamilyTag::ALL {
                records.push(CheckRecord::pass(
                    "decomposition",
                    format!(
                        "family {} matches its independently built MOPS to degree {}",
                        tag.label(),
                        dec.small_depth(tag)
                    ),
                ));
            }
            Ok(records)
        }),
        CheckName::ConverseRoundtrip => (|| {
            let g = prep.functional.quad_pushforward(FamilyTag::new(0, 0))?;
            let assembled = assemble_symmetric(&g, prep.max_degree + 1)?;
            let direct = prep.symfam()?;
            let mut records = Vec::new();
            for n in 0..=(prep.max_degree + 1) {
                records.push(CheckRecord::from_poly_difference(
                    "converse_roundtrip",
                    format!("assembled slice {n} equals direct MOPS slice"),
                    &(assembled.symmetric.slice(n) - direct.slice(n)),
                ));
            }
            Ok(records)
        })(),
        CheckName::ChristoffelConnection => prep
            .gammas()
            .and_then(|gs| verify_christoffel_connections(gs, prep.smalls()?, prep.half)),
        CheckName::Backlund => prep
            .gammas()
            .and_then(|gs| verify_backlund_equivalence(gs, prep.smalls()?, prep.half)),
        CheckName::GammaHat => prep
            .gammas()
            .and_then(|gs| verify_gamma_hat_relations(gs, prep.smalls()?, prep.half)),
        CheckName::BigFamilyRelations => {
            if prep.half < 1 {
                Ok(vec![CheckRecord::pass(
                    "big_family",
                    "no indices to check at this depth",
                )])
            } else {
                prep.gammas()
                    .and_then(|gs| verify_big_family_relations(gs, prep.dec()?, prep.half - 1))
            }
        }
        CheckName::LuFactorization => prep
            .gammas()
            .and_then(|gs| verify_block_factorization(gs, prep.smalls()?, prep.half)),
        CheckName::XuCaseStudy => (|| {
            let mu = case_study_mu(cfg)?;
            let study = xu_case_study(&mu, prep.half.max(1))?;
            Ok(study.records)
        })(),
    };
    match result {
        Ok(records) => records,
        Err(e) => vec![CheckRecord::fail(
            check.token(),
            "check could not run",
            e.to_string(),
        )],
    }
}

/// The case study always concerns the ball-simplex pair: a ball weight
/// contributes its own exponent, any other weight runs the study at `mu = 0`.
pub fn case_study_mu(cfg: &RunConfig) -> Result<Rational, Error> {
    if cfg.weight.family == WeightFamily::Ball {
        if let Some(mu) = &cfg.weight.mu {
            return parse_rational(mu);
        }
    }
    Ok(rat_int(0))
}

/// Execute a validated config and assemble the report.
pub fn run(cfg: &RunConfig) -> CliResult<RunReport> {
    let (functional, checks) = cfg.validate()?;
    let started = Instant::now();
    let prep = Prepared::new(functional.clone(), cfg.max_degree);
    let mut groups = Vec::with_capacity(checks.len());
    for check in checks {
        let records = run_check(&prep, cfg, check);
        groups.push(CheckGroup {
            name: check.token().to_string(),
            passed: all_passed(&records),
            records,
        });
    }
    Ok(RunReport {
        weight: functional.description().to_string(),
        max_degree: cfg.max_degree,
        passed: groups.iter().all(|g| g.passed),
        checks: groups,
        timing_ms: started.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::OutputConfig;
    use quadmops::moments::WeightSpec;

    fn config(weight: WeightSpec, max_degree: usize, checks: &[&str]) -> RunConfig {
        RunConfig {
            weight,
            max_degree,
            checks: Some(checks.iter().map(|s| s.to_string()).collect()),
            output: OutputConfig::default(),
        }
    }

    #[test]
    fn small_square_run_passes() {
        let cfg = config(
            WeightSpec::square_legendre(),
            4,
            &[
                "jl_identities",
                "orthogonality",
                "decomposition",
                "backlund",
            ],
        );
        let report = run(&cfg).unwrap();
        assert!(report.passed);
        assert_eq!(report.checks.len(), 4);
        assert_eq!(report.checks[0].name, "jl_identities");
    }

    #[test]
    fn negative_moment_table_fails_orthogonality_record() {
        let cfg = RunConfig::from_json(
            r#"{
                "weight": {"family": "custom", "moments": [
                    [0,0,"1"],[1,0,"0"],[0,1,"0"],[2,0,"-1"],[1,1,"0"],[0,2,"1/3"],
                    [3,0,"0"],[2,1,"0"],[1,2,"0"],[0,3,"0"],
                    [4,0,"1"],[3,1,"0"],[2,2,"0"],[1,3,"0"],[0,4,"1"]
                ]},
                "max_degree": 1,
                "checks": ["orthogonality"]
            }"#,
        )
        .unwrap();
        let report = run(&cfg).unwrap();
        assert!(!report.passed);
        let (_, record) = report.records().find(|(_, r)| !r.passed).unwrap();
        assert!(record
            .witness
            .as_deref()
            .unwrap_or_default()
            .contains("not quasi-definite at degree 1"));
    }

    #[test]
    fn asymmetric_weight_fails_symmetric_checks_without_crashing() {
        let cfg = config(
            WeightSpec {
                family: WeightFamily::Simplex,
                a: Some("1/2".into()),
                b: Some("1/2".into()),
                c: Some("1".into()),
                ..WeightSpec::square_legendre()
            },
            3,
            &["orthogonality", "decomposition"],
        );
        let report = run(&cfg).unwrap();
        assert!(!report.passed);
        assert!(report.checks[0].passed, "plain orthogonality holds");
        assert!(!report.checks[1].passed, "decomposition needs xy-symmetry");
    }
}

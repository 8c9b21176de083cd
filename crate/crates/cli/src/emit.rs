//! Report emission: JSON with full fidelity, CSV with one row per record,
//! LaTeX tables for the case study and for record summaries.

use std::path::Path;

use serde_json::{json, Value};

use quadmops::quadratic::XuCaseStudy;
use quadmops::rational::rational_to_string;
use quadmops::report::{family_to_json, matrix_to_json};
use quadmops::{MopsFamily, Var};

use crate::config::OutputFormat;
use crate::runner::RunReport;
use crate::CliResult;

pub fn report_to_json(report: &RunReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

pub fn report_from_json(text: &str) -> CliResult<RunReport> {
    serde_json::from_str(text).map_err(|e| crate::CliError::config("<report>", e))
}

fn csv_field(s: &str) -> String {
    let cleaned = s.replace('\n', "; ");
    if cleaned.contains(',') || cleaned.contains('"') {
        format!("\"{}\"", cleaned.replace('"', "\"\""))
    } else {
        cleaned
    }
}

/// One header line plus exactly one line per check record.
pub fn report_to_csv(report: &RunReport) -> String {
    let mut out = String::from("group,check,detail,status,witness\n");
    for (group, record) in report.records() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_field(group),
            csv_field(&record.check),
            csv_field(&record.detail),
            if record.passed { "pass" } else { "fail" },
            csv_field(record.witness.as_deref().unwrap_or("")),
        ));
    }
    out
}

fn latex_escape(s: &str) -> String {
    s.replace('_', "\\_").replace('^', "\\^{}")
}

pub fn report_to_latex(report: &RunReport) -> String {
    let mut out = String::new();
    out.push_str("\\begin{tabular}{llll}\n");
    out.push_str("\\hline\ncheck & detail & status & witness \\\\\n\\hline\n");
    for (group, record) in report.records() {
        out.push_str(&format!(
            "{} & {} & {} & {} \\\\\n",
            latex_escape(group),
            latex_escape(&record.detail),
            if record.passed { "pass" } else { "fail" },
            latex_escape(record.witness.as_deref().unwrap_or("")),
        ));
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

pub fn study_to_json(study: &XuCaseStudy) -> String {
    let value = json!({
        "mu": rational_to_string(&study.mu),
        "max_degree": study.n_max,
        "passed": study.passed(),
        "identifications": study.table.iter().map(|row| json!({
            "ball": row.ball_entry,
            "simplex": row.simplex_entry,
            "polynomial": row.polynomial,
        })).collect::<Vec<_>>(),
        "family_weights": study.family_weights.iter().map(|(fam, w)| json!({
            "family": fam,
            "weight": w,
        })).collect::<Vec<_>>(),
        "records": study.records,
    });
    let mut text = serde_json::to_string_pretty(&value).expect("study serializes");
    text.push('\n');
    text
}

pub fn study_to_csv(study: &XuCaseStudy) -> String {
    let mut out = String::from("group,check,detail,status,witness\n");
    for record in &study.records {
        out.push_str(&format!(
            "casestudy,{},{},{},{}\n",
            csv_field(&record.check),
            csv_field(&record.detail),
            if record.passed { "pass" } else { "fail" },
            csv_field(record.witness.as_deref().unwrap_or("")),
        ));
    }
    out
}

/// Two tables: the even-even identifications with explicit polynomials, and
/// the family-to-weight correspondences.
pub fn study_to_latex(study: &XuCaseStudy) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "% ball-simplex correspondence, mu = {}, degrees up to {}\n",
        rational_to_string(&study.mu),
        study.n_max
    ));
    out.push_str("\\begin{tabular}{lll}\n\\hline\n");
    out.push_str("ball polynomial & simplex polynomial & status \\\\\n\\hline\n");
    for row in &study.table {
        let status = study
            .records
            .iter()
            .find(|r| r.check == "xu_identity" && r.detail.starts_with(&row.ball_entry))
            .map(|r| if r.passed { "pass" } else { "fail" })
            .unwrap_or("pass");
        out.push_str(&format!(
            "${}(x,y)$ & ${}(u,v) = {}$ & {} \\\\\n",
            row.ball_entry, row.simplex_entry, row.polynomial, status
        ));
    }
    out.push_str("\\hline\n\\end{tabular}\n\n");

    out.push_str("\\begin{tabular}{ll}\n\\hline\nfamily & simplex weight \\\\\n\\hline\n");
    for (fam, weight) in &study.family_weights {
        out.push_str(&format!("${fam}$ & ${weight}$ \\\\\n"));
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

/// The `compute` document: slices, Gram matrices, and recurrence matrices.
pub fn compute_document(fam: &MopsFamily) -> CliResult<Value> {
    let top = fam.max_degree();
    let mut three_term = Vec::new();
    for n in 0..top {
        for var in Var::BOTH {
            let (d, c) = fam.three_term(n, var)?;
            three_term.push(json!({
                "n": n,
                "k": var.k(),
                "D": matrix_to_json(&d),
                "C": matrix_to_json(&c),
            }));
        }
    }
    let mut gammas = Vec::new();
    if fam.functional().symmetry().is_xy() {
        for n in 1..=top {
            for var in Var::BOTH {
                let g = fam.symmetric_gamma(n, var)?;
                gammas.push(json!({
                    "n": n,
                    "k": var.k(),
                    "Gamma": matrix_to_json(&g),
                }));
            }
        }
    }
    Ok(json!({
        "family": family_to_json(fam),
        "three_term": three_term,
        "symmetric_gamma": gammas,
    }))
}

pub fn render_report(report: &RunReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report_to_json(report),
        OutputFormat::Csv => report_to_csv(report),
        OutputFormat::Latex => report_to_latex(report),
    }
}

pub fn render_study(study: &XuCaseStudy, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => study_to_json(study),
        OutputFormat::Csv => study_to_csv(study),
        OutputFormat::Latex => study_to_latex(study),
    }
}

/// Write to the path, or to stdout when no path is given.
pub fn write_output(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text)?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

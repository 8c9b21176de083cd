//! Verification records and the JSON forms of the core types.
//!
//! Every verification routine in the crate emits flat [`CheckRecord`]s so the
//! command-line front end can assemble machine-readable reports. Rationals
//! always serialize as `"p/q"` strings, matrices as nested arrays of those,
//! polynomials as `[i, j, "p/q"]` triples.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::mops::MopsFamily;
use crate::poly::{BivariatePoly, PolyVector};
use crate::rational::{parse_rational, rational_to_string};

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Machine name of the identity family, e.g. `"jl_identity"`.
    pub check: String,
    /// Human-readable indices, e.g. `"identity 2, n=3, k=1"`.
    pub detail: String,
    pub passed: bool,
    /// On failure, the exact offending difference or error.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn pass(check: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckRecord {
            check: check.into(),
            detail: detail.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(
        check: impl Into<String>,
        detail: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CheckRecord {
            check: check.into(),
            detail: detail.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }

    /// Pass/fail depending on whether a difference matrix is exactly zero.
    pub fn from_difference(
        check: impl Into<String>,
        detail: impl Into<String>,
        diff: &RatMatrix,
    ) -> Self {
        if diff.is_zero() {
            Self::pass(check, detail)
        } else {
            Self::fail(check, detail, format!("difference {diff}"))
        }
    }

    /// Pass/fail depending on whether a difference vector of polynomials is
    /// identically zero.
    pub fn from_poly_difference(
        check: impl Into<String>,
        detail: impl Into<String>,
        diff: &PolyVector,
    ) -> Self {
        if diff.is_zero() {
            Self::pass(check, detail)
        } else {
            Self::fail(check, detail, format!("difference {diff}"))
        }
    }
}

pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.passed)
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| Value::String(rational_to_string(m.at(r, c))))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<RatMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::InvalidParameter("matrix must be an array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let entries = row
            .as_array()
            .ok_or_else(|| Error::InvalidParameter("matrix row must be an array".into()))?;
        let mut r = Vec::with_capacity(entries.len());
        for e in entries {
            let s = e
                .as_str()
                .ok_or_else(|| Error::InvalidParameter("matrix entry must be a string".into()))?;
            r.push(parse_rational(s)?);
        }
        out.push(r);
    }
    Ok(RatMatrix::from_rows(out))
}

/// `[[i, j, "p/q"], ...]` with terms in the map's ascending key order.
pub fn poly_to_json(p: &BivariatePoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(&(i, j), c)| json!([i, j, rational_to_string(c)]))
            .collect(),
    )
}

pub fn poly_vector_to_json(v: &PolyVector) -> Value {
    Value::Array(v.iter().map(poly_to_json).collect())
}

/// Full JSON document for a family: label, functional description, and the
/// per-degree slices with their Gram matrices.
pub fn family_to_json(fam: &MopsFamily) -> Value {
    json!({
        "label": fam.label(),
        "functional": fam.functional().description(),
        "max_degree": fam.max_degree(),
        "slices": (0..=fam.max_degree())
            .map(|n| poly_vector_to_json(fam.slice(n)))
            .collect::<Vec<_>>(),
        "grams": (0..=fam.max_degree())
            .map(|n| matrix_to_json(fam.gram(n)))
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn record_round_trip() {
        let r = CheckRecord::fail("orthogonality", "pair (1,2)", "difference [[1/2]]");
        let s = serde_json::to_string(&r).unwrap();
        let back: CheckRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(r, back);
        let p = CheckRecord::pass("orthogonality", "pair (0,1)");
        assert!(!serde_json::to_string(&p).unwrap().contains("witness"));
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 3), rat_int(0)],
            vec![rat(-2, 7), rat_int(4)],
        ]);
        let v = matrix_to_json(&m);
        assert_eq!(v[0][0], "1/3");
        assert_eq!(matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn poly_json_shape() {
        let p = BivariatePoly::from_terms([(2, 0, rat_int(1)), (0, 0, rat(-1, 3))]);
        let v = poly_to_json(&p);
        assert_eq!(v, json!([[0, 0, "-1/3"], [2, 0, "1"]]));
    }
}

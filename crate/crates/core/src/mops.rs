//! Degree-by-degree construction of monic orthogonal polynomial systems.
//!
//! The degree-`n` slice has `n+1` entries; entry `j` is `x^{n-j} y^j` minus
//! its best lower-degree correction, obtained from one exact linear solve
//! against the moment matrix of all monomials of total degree below `n`.
//! Orthogonality is imposed against the monomial basis rather than against
//! lower slices: in exact arithmetic conditioning is irrelevant and this is
//! one solve per slice with `n+1` right-hand sides.

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::moments::MomentFunctional;
use crate::poly::{monomials_up_to, BivariatePoly, PolyVector};
use crate::report::CheckRecord;
use crate::structmat::{l_mat, Var};

/// A monic orthogonal polynomial system built to some maximum degree, with
/// the Gram matrix of every slice.
#[derive(Clone, Debug)]
pub struct MopsFamily {
    functional: MomentFunctional,
    slices: Vec<PolyVector>,
    grams: Vec<RatMatrix>,
    label: String,
}

impl MopsFamily {
    /// Build the unique monic OPS of `f` through degree `n_max`.
    ///
    /// Fails with [`Error::NotQuasiDefinite`] naming the offending degree
    /// when the moment matrix is singular or a slice Gram matrix is not
    /// positive definite.
    pub fn build(f: &MomentFunctional, n_max: usize) -> Result<Self> {
        let mut slices = Vec::with_capacity(n_max + 1);
        let mut grams = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let slice = build_slice(f, n)?;
            let gram = f.gram(&slice, &slice)?;
            if !gram.is_positive_definite()? {
                return Err(Error::NotQuasiDefinite {
                    degree: n,
                    context: f.description().to_string(),
                });
            }
            slices.push(slice);
            grams.push(gram);
        }
        Ok(MopsFamily {
            functional: f.clone(),
            slices,
            grams,
            label: f.description().to_string(),
        })
    }

    /// Assemble a family from externally produced slices, computing Gram
    /// matrices but *not* checking orthogonality; callers that construct
    /// slices by other routes run [`MopsFamily::verify_orthogonality`]
    /// afterwards (and negative-control tests rely on being able to build
    /// deliberately broken families).
    pub fn from_parts(
        functional: MomentFunctional,
        slices: Vec<PolyVector>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let mut grams = Vec::with_capacity(slices.len());
        for s in &slices {
            grams.push(functional.gram(s, s)?);
        }
        Ok(MopsFamily {
            functional,
            slices,
            grams,
            label: label.into(),
        })
    }

    pub fn functional(&self) -> &MomentFunctional {
        &self.functional
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn max_degree(&self) -> usize {
        self.slices.len() - 1
    }

    /// The degree-`n` slice.
    pub fn slice(&self, n: usize) -> &PolyVector {
        &self.slices[n]
    }

    /// Gram matrix `H_n` of the degree-`n` slice.
    pub fn gram(&self, n: usize) -> &RatMatrix {
        &self.grams[n]
    }

    fn require_depth(&self, needed: usize, what: &str) -> Result<()> {
        if self.max_degree() < needed {
            return Err(Error::InsufficientDepth {
                what: format!("{what} of `{}`", self.label),
                needed,
                have: self.max_degree(),
            });
        }
        Ok(())
    }

    /// Lower recurrence coefficient `Γ_{n,k} = H_n L_{n-1,k}ᵀ H_{n-1}⁻¹` of
    /// an xy-symmetric family, the `(n+1)×n` matrix in
    /// `x_k·S_n = L_{n,k} S_{n+1} + Γ_{n,k} S_{n-1}`.
    ///
    /// Refuses non-xy-symmetric functionals: without symmetry the middle
    /// recurrence term does not vanish and the two-term form would be wrong.
    pub fn symmetric_gamma(&self, n: usize, var: Var) -> Result<RatMatrix> {
        if !self.functional.symmetry().is_xy() {
            return Err(Error::NotSymmetric(format!(
                "`{}` is not xy-symmetric; use the general three-term form",
                self.label
            )));
        }
        if n == 0 {
            return Ok(RatMatrix::zeros(1, 0));
        }
        self.require_depth(n, "symmetric recurrence coefficient")?;
        // Γ = (H_{n-1}⁻¹ (L_{n-1,k} H_n))ᵀ, one solve against the symmetric
        // Gram matrix instead of an explicit inverse.
        let rhs = &l_mat(n as i64 - 1, var) * &self.grams[n];
        Ok(self.grams[n - 1].solve(&rhs)?.transpose())
    }

    /// Verify `x_k·S_n = L_{n,k} S_{n+1} + Γ_{n,k} S_{n-1}` exactly.
    pub fn check_symmetric_three_term(&self, n: usize, var: Var) -> Result<CheckRecord> {
        self.require_depth(n + 1, "symmetric three-term relation")?;
        let gamma = self.symmetric_gamma(n, var)?;
        let (ex, ey) = var.exponents();
        let lhs = self.slices[n].mul_power(ex, ey);
        let mut rhs = PolyVector::mul_matrix(&l_mat(n as i64, var), &self.slices[n + 1]);
        let prev = if n == 0 {
            PolyVector::zeros(0)
        } else {
            self.slices[n - 1].clone()
        };
        rhs = &rhs + &PolyVector::mul_matrix(&gamma, &prev);
        Ok(CheckRecord::from_poly_difference(
            "symmetric_three_term",
            format!("n={n}, k={}", var.k()),
            &(&lhs - &rhs),
        ))
    }

    /// General three-term coefficients `(D̂_{n,k}, Ĉ_{n,k})` with
    /// `x_k·P_n = L_{n,k} P_{n+1} + D̂ P_n + Ĉ P_{n-1}`:
    /// `D̂ = (x_k P_n, P_n) H_n⁻¹` and `Ĉ = H_n L_{n-1,k}ᵀ H_{n-1}⁻¹`.
    /// The polynomial identity is verified exactly before returning.
    pub fn three_term(&self, n: usize, var: Var) -> Result<(RatMatrix, RatMatrix)> {
        self.require_depth(n + 1, "three-term relation")?;
        let (ex, ey) = var.exponents();
        let shifted = self.slices[n].mul_power(ex, ey);
        // (x_k P_n, P_n) is symmetric, so D̂ = (solve(H_n, ·))ᵀ works.
        let mixed = self.functional.gram(&shifted, &self.slices[n])?;
        let d = self.grams[n].solve(&mixed)?.transpose();
        let c = if n == 0 {
            RatMatrix::zeros(1, 0)
        } else {
            let rhs = &l_mat(n as i64 - 1, var) * &self.grams[n];
            self.grams[n - 1].solve(&rhs)?.transpose()
        };

        let mut rhs = PolyVector::mul_matrix(&l_mat(n as i64, var), &self.slices[n + 1]);
        rhs = &rhs + &PolyVector::mul_matrix(&d, &self.slices[n]);
        let prev = if n == 0 {
            PolyVector::zeros(0)
        } else {
            self.slices[n - 1].clone()
        };
        rhs = &rhs + &PolyVector::mul_matrix(&c, &prev);
        let diff = &shifted - &rhs;
        if !diff.is_zero() {
            return Err(Error::IdentityViolated(format!(
                "three-term relation broke for `{}` at n={n}, k={}: residual {diff}",
                self.label,
                var.k()
            )));
        }
        Ok((d, c))
    }

    /// Exact pairwise orthogonality and positive-definiteness records for
    /// every degree up to `up_to` (defaults to the full built depth).
    pub fn verify_orthogonality_up_to(&self, up_to: usize) -> Result<Vec<CheckRecord>> {
        let top = up_to.min(self.max_degree());
        let mut records = Vec::new();
        for n in 0..=top {
            for m in (n + 1)..=top {
                let g = self.functional.gram(&self.slices[n], &self.slices[m])?;
                records.push(CheckRecord::from_difference(
                    "orthogonality",
                    format!("cross-gram ({n},{m}) of `{}`", self.label),
                    &g,
                ));
            }
        }
        for n in 0..=top {
            let detail = format!("gram H_{n} of `{}` positive definite", self.label);
            match self.grams[n].is_positive_definite() {
                Ok(true) => records.push(CheckRecord::pass("positive_definite", detail)),
                Ok(false) => records.push(CheckRecord::fail(
                    "positive_definite",
                    detail,
                    format!("H_{n} = {}", self.grams[n]),
                )),
                Err(e) => records.push(CheckRecord::fail(
                    "positive_definite",
                    detail,
                    e.to_string(),
                )),
            }
        }
        Ok(records)
    }

    pub fn verify_orthogonality(&self) -> Result<Vec<CheckRecord>> {
        self.verify_orthogonality_up_to(self.max_degree())
    }

    /// Every slice entry `j` must be led by exactly `x^{n-j} y^j` with no
    /// other degree-`n` term.
    pub fn check_monic(&self) -> Result<()> {
        for (n, slice) in self.slices.iter().enumerate() {
            for j in 0..slice.len() {
                let p = slice.get(j);
                if !is_monic_entry(p, n as u32, j as u32) {
                    return Err(Error::IdentityViolated(format!(
                        "slice {n} entry {j} of `{}` is not monic: {p}",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }
}

fn is_monic_entry(p: &BivariatePoly, n: u32, j: u32) -> bool {
    use num_traits::One;
    if !p.coeff(n - j, j).is_one() {
        return false;
    }
    p.terms()
        .all(|(&(a, b), _)| a + b < n || (a, b) == (n - j, j))
}

fn build_slice(f: &MomentFunctional, n: usize) -> Result<PolyVector> {
    if n == 0 {
        return Ok(PolyVector::new(vec![BivariatePoly::one()]));
    }
    let basis = monomials_up_to(n - 1);
    let t = basis.len();
    let mut moment_matrix = RatMatrix::zeros(t, t);
    for r in 0..t {
        for c in r..t {
            let v = f.moment(basis[r].0 + basis[c].0, basis[r].1 + basis[c].1)?;
            moment_matrix.set(r, c, v.clone());
            if c != r {
                moment_matrix.set(c, r, v);
            }
        }
    }
    let mut rhs = RatMatrix::zeros(t, n + 1);
    for j in 0..=n {
        let lead = ((n - j) as u32, j as u32);
        for (r, b) in basis.iter().enumerate() {
            let v = f.moment(b.0 + lead.0, b.1 + lead.1)?;
            rhs.set(r, j, -v);
        }
    }
    let coeffs = moment_matrix.solve(&rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::NotQuasiDefinite {
            degree: n,
            context: f.description().to_string(),
        },
        other => other,
    })?;
    let entries = (0..=n)
        .map(|j| {
            let mut p = BivariatePoly::monomial((n - j) as u32, j as u32);
            for (r, b) in basis.iter().enumerate() {
                p.add_term(b.0, b.1, coeffs.at(r, j).clone());
            }
            p
        })
        .collect();
    Ok(PolyVector::new(entries))
}

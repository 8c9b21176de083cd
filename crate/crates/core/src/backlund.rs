//! Closed-form recurrence algebra of the four small families.
//!
//! Everything here is a selection-matrix sandwich of the symmetric family's
//! lower recurrence coefficients `Γ_{n,k}`: the small families' three-term
//! matrices `D̂`/`Ĉ`, the short-relation matrices `Γ̂`, and the block
//! bidiagonal factors whose products reproduce the block Jacobi operators of
//! the small families. Each formula is verified against the same quantity
//! computed directly from Gram matrices, so the two routes are genuinely
//! independent.
//!
//! Negative indices never get a special case: matrices at index `-1` have a
//! zero dimension and annihilate whatever they multiply, which is exactly
//! the "zero matrix" convention the formulas need at degree 0.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::moments::MomentFunctional;
use crate::mops::MopsFamily;
use crate::poly::PolyVector;
use crate::quadratic::QuadDecomposition;
use crate::rational::{rational_to_string, Rational};
use crate::report::CheckRecord;
use crate::structmat::{j_mat, l_mat, FamilyTag, Var};

/// The symmetric family's `Γ_{n,k}` matrices for `1 ≤ n ≤ depth`, `k ∈ {1,2}`,
/// each verified to have exact rank `n` at construction.
#[derive(Clone, Debug)]
pub struct GammaSequence {
    depth: usize,
    // gammas[k-1][n-1] holds Γ_{n,k}.
    gammas: [Vec<RatMatrix>; 2],
}

impl GammaSequence {
    /// Compute `Γ_{n,k} = H_n L_{n-1,k}ᵀ H_{n-1}⁻¹` for `n` up to `depth`.
    pub fn build(fam: &MopsFamily, depth: usize) -> Result<Self> {
        if fam.max_degree() < depth {
            return Err(Error::InsufficientDepth {
                what: format!("symmetric family `{}` for Γ sequence", fam.label()),
                needed: depth,
                have: fam.max_degree(),
            });
        }
        let mut gammas: [Vec<RatMatrix>; 2] = [Vec::new(), Vec::new()];
        for var in Var::BOTH {
            for n in 1..=depth {
                let g = fam.symmetric_gamma(n, var)?;
                if g.rank() != n {
                    return Err(Error::IdentityViolated(format!(
                        "Γ_{{{n},{}}} of `{}` has rank {} instead of {n}",
                        var.k(),
                        fam.label(),
                        g.rank()
                    )));
                }
                gammas[var.k() - 1].push(g);
            }
        }
        Ok(GammaSequence { depth, gammas })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `Γ_{n,k}`, extended by the empty shapes at `n = 0` (`1×0`) and
    /// `n = -1` (`0×0`).
    pub fn gamma(&self, n: i64, var: Var) -> RatMatrix {
        match n {
            -1 => RatMatrix::zeros(0, 0),
            0 => RatMatrix::zeros(1, 0),
            n if n >= 1 && (n as usize) <= self.depth => {
                self.gammas[var.k() - 1][n as usize - 1].clone()
            }
            _ => panic!("Γ index {n} outside built depth {}", self.depth),
        }
    }

    fn require(&self, needed: i64, what: &str) -> Result<()> {
        if needed > self.depth as i64 {
            return Err(Error::InsufficientDepth {
                what: what.to_string(),
                needed: needed.max(0) as usize,
                have: self.depth,
            });
        }
        Ok(())
    }
}

/// The two recurrence matrices `(D̂^{(i,j)}_{n,k}, Ĉ^{(i,j)}_{n,k})` of small
/// family `(i,j)`, expressed through the symmetric `Γ`s.
///
/// For the base family these read
/// `D̂ = J_n [L_{2n,k} Γ_{2n+1,k} + Γ_{2n,k} L_{2n-1,k}] J_nᵀ` and
/// `Ĉ = J_n Γ_{2n,k} Γ_{2n-1,k} J_{n-1}ᵀ` with `J = J^{(0,0)}`; the other
/// three tags shift the inner indices up by `i + j` and use their own `J`.
pub fn backlund_coeffs(
    gs: &GammaSequence,
    tag: FamilyTag,
    n: usize,
    var: Var,
) -> Result<(RatMatrix, RatMatrix)> {
    let n = n as i64;
    let shift = (tag.i + tag.j) as i64;
    let top = 2 * n + 1 + shift;
    gs.require(
        top,
        &format!("Γ sequence for D̂/Ĉ of family {} at n={n}", tag.label()),
    )?;
    let jn = j_mat(n, tag);
    let jprev_t = j_mat(n - 1, tag).transpose();
    let base = 2 * n + shift;
    let inner = &(&l_mat(base, var) * &gs.gamma(base + 1, var))
        + &(&gs.gamma(base, var) * &l_mat(base - 1, var));
    let d = &(&jn * &inner) * &jn.transpose();
    let c = &(&jn * &(&gs.gamma(base, var) * &gs.gamma(base - 1, var))) * &jprev_t;
    Ok((d, c))
}

/// The short-relation matrix `Γ̂^{(tag)}_{n,k}` connecting two small families.
///
/// With `m = (2-k, k-1)` (the family modified by `x_k`) and
/// `o = (k-1, 2-k)` (modified by the other variable):
///
/// * `Γ̂^{(0,0)}_{n,k} = J_n^{(0,0)} Γ_{2n,k} (J_{n-1}^{(m)})ᵀ` in
///   `P̂^{(0,0)}_n = P̂^{(m)}_n + Γ̂^{(0,0)}_{n,k} P̂^{(m)}_{n-1}`,
/// * `Γ̂^{(0,1)}_{n,k} = J_{n-1}^{(1,1)} Γ_{2n,k} (J_{n-1}^{(o)})ᵀ` in
///   `x_k P̂^{(1,1)}_{n-1} = L_{n-1,k} P̂^{(o)}_n + Γ̂^{(0,1)}_{n,k} P̂^{(o)}_{n-1}`,
/// * `Γ̂^{(1,1)}_{n,k} = J_n^{(o)} Γ_{2n+1,k} (J_{n-1}^{(1,1)})ᵀ` in
///   `P̂^{(o)}_n = P̂^{(1,1)}_n + Γ̂^{(1,1)}_{n,k} P̂^{(1,1)}_{n-1}`,
/// * `Γ̂^{(1,0)}_{n,k} = J_n^{(m)} Γ_{2n+1,k} (J_n^{(0,0)})ᵀ` in
///   `x_k P̂^{(m)}_n = L_{n,k} P̂^{(0,0)}_{n+1} + Γ̂^{(1,0)}_{n,k} P̂^{(0,0)}_n`.
pub fn gamma_hat(gs: &GammaSequence, tag: FamilyTag, n: usize, var: Var) -> Result<RatMatrix> {
    let n = n as i64;
    let tm = var.modified_tag();
    let to = var.other_modified_tag();
    let t00 = FamilyTag::new(0, 0);
    let t11 = FamilyTag::new(1, 1);
    let what = format!("Γ sequence for Γ̂{} at n={n}", tag.label());
    let m = match (tag.i, tag.j) {
        (0, 0) => {
            gs.require(2 * n, &what)?;
            &(&j_mat(n, t00) * &gs.gamma(2 * n, var)) * &j_mat(n - 1, tm).transpose()
        }
        (0, 1) => {
            gs.require(2 * n, &what)?;
            &(&j_mat(n - 1, t11) * &gs.gamma(2 * n, var)) * &j_mat(n - 1, to).transpose()
        }
        (1, 1) => {
            gs.require(2 * n + 1, &what)?;
            &(&j_mat(n, to) * &gs.gamma(2 * n + 1, var)) * &j_mat(n - 1, t11).transpose()
        }
        _ => {
            gs.require(2 * n + 1, &what)?;
            &(&j_mat(n, tm) * &gs.gamma(2 * n + 1, var)) * &j_mat(n, t00).transpose()
        }
    };
    Ok(m)
}

/// Connection matrices `(M_n, N_n)` between a family and the MOPS of its
/// Christoffel modification by `λ = a·x + b·y`, verified exactly against
/// both short relations:
///
/// * `P_n = P*_n + M_n P*_{n-1}`,
/// * `λ P*_n = (a L_{n,1} + b L_{n,2}) P_{n+1} + c·N_n P_n`,
///
/// where `c = a·μ(1,0) + b·μ(0,1)` undoes the renormalization of the starred
/// functional: with both functionals normalized to unit mass,
/// `M_n = c⁻¹ H_n (a L_{n-1,1}ᵀ + b L_{n-1,2}ᵀ) (H*_{n-1})⁻¹` and the bare
/// `N_n = H*_n H_n⁻¹` is returned (so `N_0` is the identity).
pub fn christoffel_connection(
    fam: &MopsFamily,
    fam_star: &MopsFamily,
    a: &Rational,
    b: &Rational,
    n: usize,
) -> Result<(RatMatrix, RatMatrix)> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "connection matrices start at n = 1".into(),
        ));
    }
    let pair = format!("`{}` -> `{}`", fam.label(), fam_star.label());
    let mass = fam.functional().christoffel_mass(a, b)?;
    if !num_traits::Signed::is_positive(&mass) {
        return Err(Error::NonPositiveMass);
    }

    let lt = |m: i64, var: Var| l_mat(m, var).transpose();
    let mixed = &(&lt(n as i64 - 1, Var::X).scale(a) + &lt(n as i64 - 1, Var::Y).scale(b));
    // M = c⁻¹ H_n mixed (H*_{n-1})⁻¹, via a solve on the symmetric H*.
    let m_right = fam_star
        .gram(n - 1)
        .solve(&(fam.gram(n) * mixed).transpose())?
        .transpose();
    let m = m_right.scale(&(Rational::from_integer(1.into()) / &mass));
    let n_mat = fam.gram(n).solve(fam_star.gram(n))?.transpose();

    // Short relation 1: P_n = P*_n + M P*_{n-1}.
    let rhs1 = &fam_star.slice(n).clone() + &PolyVector::mul_matrix(&m, fam_star.slice(n - 1));
    if !(fam.slice(n) - &rhs1).is_zero() {
        return Err(Error::NotChristoffelPair(format!(
            "{pair}: P_{n} != P*_{n} + M_{n} P*_{}",
            n - 1
        )));
    }
    // Short relation 2 needs the next slice of the base family.
    if fam.max_degree() < n + 1 {
        return Err(Error::InsufficientDepth {
            what: format!("base family `{}` for connection at n={n}", fam.label()),
            needed: n + 1,
            have: fam.max_degree(),
        });
    }
    let lambda =
        crate::poly::BivariatePoly::from_terms([(1u32, 0u32, a.clone()), (0, 1, b.clone())]);
    let lhs = fam_star.slice(n).mul_poly(&lambda);
    let shift = &(&l_mat(n as i64, Var::X).scale(a) + &l_mat(n as i64, Var::Y).scale(b));
    let mut rhs2 = PolyVector::mul_matrix(shift, fam.slice(n + 1));
    rhs2 = &rhs2 + &PolyVector::mul_matrix(&n_mat.scale(&mass), fam.slice(n));
    if !(&lhs - &rhs2).is_zero() {
        return Err(Error::NotChristoffelPair(format!(
            "{pair}: λP*_{n} != (aL+bL)P_{} + c N_{n} P_{n}",
            n + 1
        )));
    }
    Ok((m, n_mat))
}

/// Which of the four block bidiagonal factors a [`BlockFactor`] is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// Lower unit-diagonal factor with sub-blocks `Γ̂^{(0,0)}`.
    L0,
    /// Lower unit-diagonal factor with sub-blocks `Γ̂^{(1,1)}`.
    L1,
    /// Upper factor with diagonal `Γ̂^{(0,1)}_{n+1,k}` and super-blocks `L_{n,k}`.
    U0,
    /// Upper factor with diagonal `Γ̂^{(1,0)}_{n,k}` and super-blocks `L_{n,k}`.
    U1,
}

/// A truncated block matrix over the degree-slice block sizes `1, 2, 3, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    /// Number of block rows/columns; block `n` has size `n+1`.
    pub block_count: usize,
    pub matrix: RatMatrix,
}

impl BlockMatrix {
    fn offsets(block_count: usize) -> Vec<usize> {
        let mut off = vec![0usize];
        for n in 0..block_count {
            off.push(off[n] + n + 1);
        }
        off
    }

    /// Assemble from a block filler: `fill(row, col)` returns the block or
    /// `None` for a structural zero.
    pub fn assemble(
        block_count: usize,
        mut fill: impl FnMut(usize, usize) -> Option<RatMatrix>,
    ) -> Self {
        let off = Self::offsets(block_count);
        let dim = off[block_count];
        let mut matrix = RatMatrix::zeros(dim, dim);
        for r in 0..block_count {
            for c in 0..block_count {
                if let Some(b) = fill(r, c) {
                    assert_eq!(
                        (b.rows(), b.cols()),
                        (r + 1, c + 1),
                        "block ({r},{c}) shape"
                    );
                    matrix.paste(off[r], off[c], &b);
                }
            }
        }
        BlockMatrix {
            block_count,
            matrix,
        }
    }

    /// The `(r, c)` block.
    pub fn block(&self, r: usize, c: usize) -> RatMatrix {
        let off = Self::offsets(self.block_count);
        self.matrix.slice(off[r], off[r + 1], off[c], off[c + 1])
    }

    /// The leading principal part with the last block row and column cut
    /// off; products of truncated factors are only trustworthy there.
    pub fn interior(&self) -> RatMatrix {
        let off = Self::offsets(self.block_count);
        let dim = off[self.block_count - 1];
        self.matrix.slice(0, dim, 0, dim)
    }

    pub fn product(&self, rhs: &BlockMatrix) -> BlockMatrix {
        assert_eq!(self.block_count, rhs.block_count);
        BlockMatrix {
            block_count: self.block_count,
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

/// One truncated block bidiagonal factor.
#[derive(Clone, Debug)]
pub struct BlockFactor {
    pub kind: FactorKind,
    pub var: Var,
    pub blocks: BlockMatrix,
}

/// Build the four factors truncated to block rows `0..=n_trunc`.
///
/// Diagonal blocks are indexed from `n = 0` throughout: the degree-0 short
/// relations (`x_k·P̂^{(m)}_0 = L_{0,k} P̂^{(0,0)}_1 + Γ̂^{(1,0)}_{0,k} P̂^{(0,0)}_0`
/// and its mates) require a degree-0 diagonal block, and no consistent block
/// shape exists otherwise.
pub fn block_factors(gs: &GammaSequence, var: Var, n_trunc: usize) -> Result<[BlockFactor; 4]> {
    let count = n_trunc + 1;
    gs.require(
        2 * n_trunc as i64 + 2,
        &format!("Γ sequence for block factors truncated at {n_trunc}"),
    )?;

    let lower = |tag: FamilyTag| -> Result<BlockMatrix> {
        let mut blocks: Vec<Vec<Option<RatMatrix>>> = vec![vec![None; count]; count];
        for n in 0..count {
            blocks[n][n] = Some(RatMatrix::identity(n + 1));
            if n >= 1 {
                blocks[n][n - 1] = Some(gamma_hat(gs, tag, n, var)?);
            }
        }
        Ok(BlockMatrix::assemble(count, |r, c| blocks[r][c].take()))
    };
    let upper = |tag: FamilyTag, diag_shift: usize| -> Result<BlockMatrix> {
        let mut blocks: Vec<Vec<Option<RatMatrix>>> = vec![vec![None; count]; count];
        for n in 0..count {
            blocks[n][n] = Some(gamma_hat(gs, tag, n + diag_shift, var)?);
            if n + 1 < count {
                blocks[n][n + 1] = Some(l_mat(n as i64, var));
            }
        }
        Ok(BlockMatrix::assemble(count, |r, c| blocks[r][c].take()))
    };

    let l0 = lower(FamilyTag::new(0, 0))?;
    let l1 = lower(FamilyTag::new(1, 1))?;
    let u0 = upper(FamilyTag::new(0, 1), 1)?;
    let u1 = upper(FamilyTag::new(1, 0), 0)?;
    Ok([
        BlockFactor {
            kind: FactorKind::L0,
            var,
            blocks: l0,
        },
        BlockFactor {
            kind: FactorKind::L1,
            var,
            blocks: l1,
        },
        BlockFactor {
            kind: FactorKind::U0,
            var,
            blocks: u0,
        },
        BlockFactor {
            kind: FactorKind::U1,
            var,
            blocks: u1,
        },
    ])
}

/// The block Jacobi operator of multiplication by `x_k` in a family's own
/// basis, computed directly from Gram matrices and truncated to block rows
/// `0..=n_trunc`.
pub fn block_jacobi(fam: &MopsFamily, var: Var, n_trunc: usize) -> Result<BlockMatrix> {
    let count = n_trunc + 1;
    let mut diag = Vec::with_capacity(count);
    let mut sub = Vec::with_capacity(count);
    for n in 0..count {
        let (d, c) = fam.three_term(n, var)?;
        diag.push(d);
        sub.push(c);
    }
    Ok(BlockMatrix::assemble(count, |r, c| {
        if c == r {
            Some(diag[r].clone())
        } else if c + 1 == r {
            Some(sub[r].clone())
        } else if c == r + 1 {
            Some(l_mat(r as i64, var))
        } else {
            None
        }
    }))
}

/// Compare the four factor products against the directly computed block
/// Jacobi operators on every fully determined (interior) block.
pub fn verify_block_factorization(
    gs: &GammaSequence,
    smalls: &[MopsFamily; 4],
    n_trunc: usize,
) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    for var in Var::BOTH {
        let [l0, l1, u0, u1] = block_factors(gs, var, n_trunc)?;
        let cases = [
            ("L0*U1", l0.blocks.product(&u1.blocks), FamilyTag::new(0, 0)),
            ("U0*L1", u0.blocks.product(&l1.blocks), FamilyTag::new(1, 1)),
            ("U1*L0", u1.blocks.product(&l0.blocks), var.modified_tag()),
            (
                "L1*U0",
                l1.blocks.product(&u0.blocks),
                var.other_modified_tag(),
            ),
        ];
        for (name, product, tag) in cases {
            let jac = block_jacobi(&smalls[tag.index()], var, n_trunc)?;
            let diff = &product.interior() - &jac.interior();
            records.push(CheckRecord::from_difference(
                "lu_factorization",
                format!(
                    "{name} vs Jacobi operator of family {} in x_{}, interior blocks < {n_trunc}",
                    tag.label(),
                    var.k()
                ),
                &diff,
            ));
        }
    }
    Ok(records)
}

/// Check that the sandwich formulas reproduce `three_term` on each small
/// family, entry for entry, for all `n ≤ n_max`.
pub fn verify_backlund_equivalence(
    gs: &GammaSequence,
    smalls: &[MopsFamily; 4],
    n_max: usize,
) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    for tag in FamilyTag::ALL {
        let fam = &smalls[tag.index()];
        for var in Var::BOTH {
            for n in 0..=n_max {
                let (d_direct, c_direct) = fam.three_term(n, var)?;
                let (d_formula, c_formula) = backlund_coeffs(gs, tag, n, var)?;
                records.push(CheckRecord::from_difference(
                    "backlund",
                    format!("D̂{} n={n} k={}", tag.label(), var.k()),
                    &(&d_formula - &d_direct),
                ));
                records.push(CheckRecord::from_difference(
                    "backlund",
                    format!("Ĉ{} n={n} k={}", tag.label(), var.k()),
                    &(&c_formula - &c_direct),
                ));
                // The same statement at the polynomial level, with the
                // formula matrices driving the recurrence.
                let (ex, ey) = var.exponents();
                let lhs = fam.slice(n).mul_power(ex, ey);
                let prev = if n == 0 {
                    PolyVector::zeros(0)
                } else {
                    fam.slice(n - 1).clone()
                };
                let rhs = &(&PolyVector::mul_matrix(&l_mat(n as i64, var), fam.slice(n + 1))
                    + &PolyVector::mul_matrix(&d_formula, fam.slice(n)))
                    + &PolyVector::mul_matrix(&c_formula, &prev);
                records.push(CheckRecord::from_poly_difference(
                    "backlund_ttr",
                    format!(
                        "three-term of {} via formulas, n={n} k={}",
                        tag.label(),
                        var.k()
                    ),
                    &(&lhs - &rhs),
                ));
            }
        }
    }
    Ok(records)
}

/// Verify the four short relations between small families as exact
/// polynomial identities, for all `n ≤ n_max` and both variables.
pub fn verify_gamma_hat_relations(
    gs: &GammaSequence,
    smalls: &[MopsFamily; 4],
    n_max: usize,
) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    let slice = |tag: FamilyTag, n: i64| -> PolyVector {
        if n < 0 {
            PolyVector::zeros(0)
        } else {
            smalls[tag.index()].slice(n as usize).clone()
        }
    };
    let t00 = FamilyTag::new(0, 0);
    let t11 = FamilyTag::new(1, 1);
    for var in Var::BOTH {
        let (ex, ey) = var.exponents();
        let tm = var.modified_tag();
        let to = var.other_modified_tag();
        for n in 0..=n_max {
            let ni = n as i64;
            let k = var.k();

            // P̂^{(0,0)}_n = P̂^{(m)}_n + Γ̂^{(0,0)} P̂^{(m)}_{n-1}
            let g00 = gamma_hat(gs, t00, n, var)?;
            let rhs = &slice(tm, ni) + &PolyVector::mul_matrix(&g00, &slice(tm, ni - 1));
            records.push(CheckRecord::from_poly_difference(
                "gamma_hat",
                format!("short relation (0,0) n={n} k={k}"),
                &(&slice(t00, ni) - &rhs),
            ));

            // x_k P̂^{(1,1)}_{n-1} = L_{n-1,k} P̂^{(o)}_n + Γ̂^{(0,1)} P̂^{(o)}_{n-1}
            if n >= 1 {
                let g01 = gamma_hat(gs, FamilyTag::new(0, 1), n, var)?;
                let lhs = slice(t11, ni - 1).mul_power(ex, ey);
                let rhs = &PolyVector::mul_matrix(&l_mat(ni - 1, var), &slice(to, ni))
                    + &PolyVector::mul_matrix(&g01, &slice(to, ni - 1));
                records.push(CheckRecord::from_poly_difference(
                    "gamma_hat",
                    format!("short relation (0,1) n={n} k={k}"),
                    &(&lhs - &rhs),
                ));
            }

            // P̂^{(o)}_n = P̂^{(1,1)}_n + Γ̂^{(1,1)} P̂^{(1,1)}_{n-1}
            let g11 = gamma_hat(gs, t11, n, var)?;
            let rhs = &slice(t11, ni) + &PolyVector::mul_matrix(&g11, &slice(t11, ni - 1));
            records.push(CheckRecord::from_poly_difference(
                "gamma_hat",
                format!("short relation (1,1) n={n} k={k}"),
                &(&slice(to, ni) - &rhs),
            ));

            // x_k P̂^{(m)}_n = L_{n,k} P̂^{(0,0)}_{n+1} + Γ̂^{(1,0)} P̂^{(0,0)}_n
            let g10 = gamma_hat(gs, FamilyTag::new(1, 0), n, var)?;
            let lhs = slice(tm, ni).mul_power(ex, ey);
            let rhs = &PolyVector::mul_matrix(&l_mat(ni, var), &slice(t00, ni + 1))
                + &PolyVector::mul_matrix(&g10, &slice(t00, ni));
            records.push(CheckRecord::from_poly_difference(
                "gamma_hat",
                format!("short relation (1,0) n={n} k={k}"),
                &(&lhs - &rhs),
            ));
        }
    }
    Ok(records)
}

/// Verify the four relations that connect neighbouring big families and the
/// three-term relations of the big families themselves, as exact polynomial
/// identities in the squared variables, for all `n ≤ n_max` and `k ∈ {1,2}`.
///
/// Requires the decomposition populated one degree past `n_max` (the
/// relations reach into `P^{(0,0)}_{n+1}`) and the `Γ` sequence through
/// `2·n_max + 2`.
pub fn verify_big_family_relations(
    gs: &GammaSequence,
    dec: &QuadDecomposition,
    n_max: usize,
) -> Result<Vec<CheckRecord>> {
    let t00 = FamilyTag::new(0, 0);
    let t11 = FamilyTag::new(1, 1);
    if dec.big(t00).len() < n_max + 2 || dec.big(t11).len() < n_max + 1 {
        return Err(Error::InsufficientDepth {
            what: "decomposition for big-family relations".to_string(),
            needed: n_max + 1,
            have: dec.big(t00).len().saturating_sub(1),
        });
    }
    gs.require(2 * n_max as i64 + 2, "Γ sequence for big-family relations")?;

    let mut records = Vec::new();
    // Negative-index big vectors are zero vectors of the family's natural
    // size 2n+1+i+j (clamped at zero), so the honest Γ matrices still fit.
    let big = |tag: FamilyTag, n: i64| -> PolyVector {
        if n < 0 {
            let size = (2 * n + 1 + tag.i as i64 + tag.j as i64).max(0) as usize;
            PolyVector::zeros(size)
        } else {
            dec.big(tag)[n as usize].clone()
        }
    };
    for var in Var::BOTH {
        let (ex, ey) = var.exponents();
        let tm = var.modified_tag();
        let to = var.other_modified_tag();
        let k = var.k();
        let g = |m: i64| gs.gamma(m, var);
        let l = |m: i64| l_mat(m, var);
        for n in 0..=n_max {
            let ni = n as i64;

            // P^{(0,0)}_n = L_{2n,k} P^{(m)}_n + Γ_{2n,k} P^{(m)}_{n-1}
            let rhs = &PolyVector::mul_matrix(&l(2 * ni), &big(tm, ni))
                + &PolyVector::mul_matrix(&g(2 * ni), &big(tm, ni - 1));
            records.push(CheckRecord::from_poly_difference(
                "big_family",
                format!("link (0,0)-({}) n={n} k={k}", tm.label()),
                &(&big(t00, ni) - &rhs),
            ));

            // x_k P^{(1,1)}_{n-1} = L_{2n,k} P^{(o)}_n + Γ_{2n,k} P^{(o)}_{n-1}
            if n >= 1 {
                let lhs = big(t11, ni - 1).mul_power(ex, ey);
                let rhs = &PolyVector::mul_matrix(&l(2 * ni), &big(to, ni))
                    + &PolyVector::mul_matrix(&g(2 * ni), &big(to, ni - 1));
                records.push(CheckRecord::from_poly_difference(
                    "big_family",
                    format!("link (1,1)-({}) n={n} k={k}", to.label()),
                    &(&lhs - &rhs),
                ));
            }

            // P^{(o)}_n = L_{2n+1,k} P^{(1,1)}_n + Γ_{2n+1,k} P^{(1,1)}_{n-1}
            let rhs = &PolyVector::mul_matrix(&l(2 * ni + 1), &big(t11, ni))
                + &PolyVector::mul_matrix(&g(2 * ni + 1), &big(t11, ni - 1));
            records.push(CheckRecord::from_poly_difference(
                "big_family",
                format!("link ({})-(1,1) n={n} k={k}", to.label()),
                &(&big(to, ni) - &rhs),
            ));

            // x_k P^{(m)}_n = L_{2n+1,k} P^{(0,0)}_{n+1} + Γ_{2n+1,k} P^{(0,0)}_n
            let lhs = big(tm, ni).mul_power(ex, ey);
            let rhs = &PolyVector::mul_matrix(&l(2 * ni + 1), &big(t00, ni + 1))
                + &PolyVector::mul_matrix(&g(2 * ni + 1), &big(t00, ni));
            records.push(CheckRecord::from_poly_difference(
                "big_family",
                format!("link ({})-(0,0) n={n} k={k}", tm.label()),
                &(&lhs - &rhs),
            ));
        }

        // Three-term relations of the big families; the usable range is one
        // degree shorter because they reach into P_{n+1} of each family.
        for n in 0..n_max {
            let ni = n as i64;
            let mid_even = &(&l(2 * ni) * &g(2 * ni + 1)) + &(&g(2 * ni) * &l(2 * ni - 1));
            let low_even = &g(2 * ni) * &g(2 * ni - 1);
            let mid_odd = &(&l(2 * ni + 1) * &g(2 * ni + 2)) + &(&g(2 * ni + 1) * &l(2 * ni));
            let low_odd = &g(2 * ni + 1) * &g(2 * ni);

            // x_k P^{(0,0)}_n = L L P^{(0,0)}_{n+1} + mid P^{(0,0)}_n + low P^{(0,0)}_{n-1}
            let lhs = big(t00, ni).mul_power(ex, ey);
            let rhs = &(&PolyVector::mul_matrix(&(&l(2 * ni) * &l(2 * ni + 1)), &big(t00, ni + 1))
                + &PolyVector::mul_matrix(&mid_even, &big(t00, ni)))
                + &PolyVector::mul_matrix(&low_even, &big(t00, ni - 1));
            records.push(CheckRecord::from_poly_difference(
                "big_family_ttr",
                format!("three-term (0,0) n={n} k={k}"),
                &(&lhs - &rhs),
            ));

            // x_k P^{(1,1)}_{n-1} = L L P^{(1,1)}_n + mid P^{(1,1)}_{n-1} + low P^{(1,1)}_{n-2}
            if n >= 1 {
                let lhs = big(t11, ni - 1).mul_power(ex, ey);
                let rhs = &(&PolyVector::mul_matrix(&(&l(2 * ni) * &l(2 * ni + 1)), &big(t11, ni))
                    + &PolyVector::mul_matrix(&mid_even, &big(t11, ni - 1)))
                    + &PolyVector::mul_matrix(&low_even, &big(t11, ni - 2));
                records.push(CheckRecord::from_poly_difference(
                    "big_family_ttr",
                    format!("three-term (1,1) n={n} k={k}"),
                    &(&lhs - &rhs),
                ));
            }

            // The two mixed families share their coefficients.
            for tag in [tm, to] {
                let lhs = big(tag, ni).mul_power(ex, ey);
                let rhs = &(&PolyVector::mul_matrix(
                    &(&l(2 * ni + 1) * &l(2 * ni + 2)),
                    &big(tag, ni + 1),
                ) + &PolyVector::mul_matrix(&mid_odd, &big(tag, ni)))
                    + &PolyVector::mul_matrix(&low_odd, &big(tag, ni - 1));
                records.push(CheckRecord::from_poly_difference(
                    "big_family_ttr",
                    format!("three-term ({}) n={n} k={k}", tag.label()),
                    &(&lhs - &rhs),
                ));
            }
        }
    }
    Ok(records)
}

/// Cross-module consistency of the connection matrices with the `Γ̂`s:
/// `M_n` of the pair `(0,0) -> (m)` equals `Γ̂^{(0,0)}_{n,k}`, `M_n` of
/// `(o) -> (1,1)` equals `Γ̂^{(1,1)}_{n,k}`, and the mass-scaled `N_n` of the
/// same pairs equal `Γ̂^{(1,0)}_{n,k}` and `Γ̂^{(0,1)}_{n+1,k}`.
pub fn verify_christoffel_connections(
    gs: &GammaSequence,
    smalls: &[MopsFamily; 4],
    n_max: usize,
) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    let one = Rational::from_integer(1.into());
    let zero = Rational::zero();
    for var in Var::BOTH {
        let k = var.k();
        let (a, b) = match var {
            Var::X => (one.clone(), zero.clone()),
            Var::Y => (zero.clone(), one.clone()),
        };
        let base = &smalls[FamilyTag::new(0, 0).index()];
        let modified = &smalls[var.modified_tag().index()];
        let other = &smalls[var.other_modified_tag().index()];
        let corner = &smalls[FamilyTag::new(1, 1).index()];
        let mass_base = base.functional().christoffel_mass(&a, &b)?;
        let mass_other = other.functional().christoffel_mass(&a, &b)?;

        for n in 1..=n_max {
            let (m1, n1) = christoffel_connection(base, modified, &a, &b, n)?;
            records.push(CheckRecord::from_difference(
                "christoffel_connection",
                format!(
                    "M_{n} of (0,0)->({}) equals Γ̂^(0,0) k={k}",
                    var.modified_tag().label()
                ),
                &(&m1 - &gamma_hat(gs, FamilyTag::new(0, 0), n, var)?),
            ));
            records.push(CheckRecord::from_difference(
                "christoffel_connection",
                format!(
                    "c·N_{n} of (0,0)->({}) equals Γ̂^(1,0) k={k}",
                    var.modified_tag().label()
                ),
                &(&n1.scale(&mass_base) - &gamma_hat(gs, FamilyTag::new(1, 0), n, var)?),
            ));

            let (m2, n2) = christoffel_connection(other, corner, &a, &b, n)?;
            records.push(CheckRecord::from_difference(
                "christoffel_connection",
                format!(
                    "M_{n} of ({})->(1,1) equals Γ̂^(1,1) k={k}",
                    var.other_modified_tag().label()
                ),
                &(&m2 - &gamma_hat(gs, FamilyTag::new(1, 1), n, var)?),
            ));
            records.push(CheckRecord::from_difference(
                "christoffel_connection",
                format!(
                    "c·N_{n} of ({})->(1,1) equals Γ̂^(0,1) k={k}",
                    var.other_modified_tag().label()
                ),
                &(&n2.scale(&mass_other) - &gamma_hat(gs, FamilyTag::new(0, 1), n + 1, var)?),
            ));
        }
    }
    Ok(records)
}

/// Convenience: `N_0` for reporting (`H*_0 H_0⁻¹`, the identity under the
/// normalization convention).
pub fn connection_n0(fam: &MopsFamily, fam_star: &MopsFamily) -> Result<RatMatrix> {
    fam.gram(0).solve(fam_star.gram(0)).map(|m| m.transpose())
}

/// Human-readable label for a Christoffel factor, used in reports.
pub fn lambda_label(a: &Rational, b: &Rational) -> String {
    format!("{}·x + {}·y", rational_to_string(a), rational_to_string(b))
}

/// Independent construction of the four small families, to the depths the
/// verification routines need when comparing against formulas.
pub fn build_small_families(f: &MomentFunctional, depth: usize) -> Result<[MopsFamily; 4]> {
    let mut out = Vec::with_capacity(4);
    for tag in FamilyTag::ALL {
        out.push(MopsFamily::build(&f.quad_pushforward(tag)?, depth)?);
    }
    Ok(out.try_into().expect("four families"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::decompose;
    use crate::rational::{rat, rat_int};
    use crate::report::all_passed;

    fn sq() -> MomentFunctional {
        MomentFunctional::square_legendre()
    }

    fn mat(rows: Vec<Vec<Rational>>) -> RatMatrix {
        RatMatrix::from_rows(rows)
    }

    #[test]
    fn backlund_spot_values_base_family() {
        let fam = MopsFamily::build(&sq(), 4).unwrap();
        let gs = GammaSequence::build(&fam, 3).unwrap();
        let (d, c) = backlund_coeffs(&gs, FamilyTag::new(0, 0), 1, Var::X).unwrap();
        assert_eq!(
            d,
            mat(vec![
                vec![rat(11, 21), rat_int(0)],
                vec![rat_int(0), rat(1, 3)],
            ])
        );
        assert_eq!(c, mat(vec![vec![rat(4, 45)], vec![rat_int(0)]]));
    }

    #[test]
    fn backlund_degree_zero_edge() {
        let fam = MopsFamily::build(&sq(), 2).unwrap();
        let gs = GammaSequence::build(&fam, 1).unwrap();
        let (d, c) = backlund_coeffs(&gs, FamilyTag::new(0, 0), 0, Var::X).unwrap();
        assert_eq!(d, mat(vec![vec![rat(1, 3)]]));
        assert_eq!((c.rows(), c.cols()), (1, 0));
    }

    #[test]
    fn backlund_insufficient_depth() {
        let fam = MopsFamily::build(&sq(), 2).unwrap();
        let gs = GammaSequence::build(&fam, 2).unwrap();
        assert!(matches!(
            backlund_coeffs(&gs, FamilyTag::new(0, 0), 1, Var::X),
            Err(Error::InsufficientDepth { .. })
        ));
    }

    #[test]
    fn gamma_hat_spot_values() {
        let fam = MopsFamily::build(&sq(), 4).unwrap();
        let gs = GammaSequence::build(&fam, 3).unwrap();
        assert_eq!(
            gamma_hat(&gs, FamilyTag::new(1, 0), 0, Var::X).unwrap(),
            mat(vec![vec![rat(1, 3)]])
        );
        assert_eq!(
            gamma_hat(&gs, FamilyTag::new(0, 0), 1, Var::X).unwrap(),
            mat(vec![vec![rat(4, 15)], vec![rat_int(0)]])
        );
        assert_eq!(
            gamma_hat(&gs, FamilyTag::new(1, 0), 1, Var::X).unwrap(),
            mat(vec![
                vec![rat(9, 35), rat_int(0)],
                vec![rat_int(0), rat(1, 3)],
            ])
        );
    }

    #[test]
    fn christoffel_connection_spot_values() {
        let g00 = sq().quad_pushforward(FamilyTag::new(0, 0)).unwrap();
        let g10 = sq().quad_pushforward(FamilyTag::new(1, 0)).unwrap();
        let fam = MopsFamily::build(&g00, 3).unwrap();
        let fam_star = MopsFamily::build(&g10, 2).unwrap();
        let (m1, _) = christoffel_connection(&fam, &fam_star, &rat_int(1), &rat_int(0), 1).unwrap();
        assert_eq!(m1, mat(vec![vec![rat(4, 15)], vec![rat_int(0)]]));
        // N_0 = gram*(1,1)·gram(1,1)⁻¹ = [[1]] under the normalization.
        assert_eq!(
            connection_n0(&fam, &fam_star).unwrap(),
            RatMatrix::identity(1)
        );

        // The x<->y mirrored pair gives the row-swapped M_1.
        let g01 = sq().quad_pushforward(FamilyTag::new(0, 1)).unwrap();
        let fam_star_y = MopsFamily::build(&g01, 2).unwrap();
        let (m1y, _) =
            christoffel_connection(&fam, &fam_star_y, &rat_int(0), &rat_int(1), 1).unwrap();
        assert_eq!(m1y, mat(vec![vec![rat_int(0)], vec![rat(4, 15)]]));
    }

    #[test]
    fn christoffel_connection_rejects_wrong_pair() {
        let g00 = sq().quad_pushforward(FamilyTag::new(0, 0)).unwrap();
        let g11 = sq().quad_pushforward(FamilyTag::new(1, 1)).unwrap();
        let fam = MopsFamily::build(&g00, 3).unwrap();
        let wrong = MopsFamily::build(&g11, 2).unwrap();
        assert!(matches!(
            christoffel_connection(&fam, &wrong, &rat_int(1), &rat_int(0), 1),
            Err(Error::NotChristoffelPair(_))
        ));
    }

    #[test]
    fn block_product_spot_values() {
        let fam = MopsFamily::build(&sq(), 7).unwrap();
        let gs = GammaSequence::build(&fam, 6).unwrap();
        let [l0, _, _, u1] = block_factors(&gs, Var::X, 2).unwrap();
        let prod = l0.blocks.product(&u1.blocks);
        assert_eq!(prod.block(0, 0), mat(vec![vec![rat(1, 3)]]));
        assert_eq!(
            prod.block(1, 0),
            mat(vec![vec![rat(4, 45)], vec![rat_int(0)]])
        );
        assert_eq!(prod.block(0, 1), l_mat(0, Var::X));
    }

    #[test]
    fn full_square_verification_suite() {
        let fam = MopsFamily::build(&sq(), 9).unwrap();
        let gs = GammaSequence::build(&fam, 8).unwrap();
        let smalls = build_small_families(&sq(), 4).unwrap();
        assert!(all_passed(
            &verify_backlund_equivalence(&gs, &smalls, 2).unwrap()
        ));
        assert!(all_passed(
            &verify_gamma_hat_relations(&gs, &smalls, 2).unwrap()
        ));
        assert!(all_passed(
            &verify_christoffel_connections(&gs, &smalls, 2).unwrap()
        ));
        let dec = decompose(&fam, 4).unwrap();
        assert!(all_passed(
            &verify_big_family_relations(&gs, &dec, 2).unwrap()
        ));
        assert!(all_passed(
            &verify_block_factorization(&gs, &smalls, 2).unwrap()
        ));
    }
}

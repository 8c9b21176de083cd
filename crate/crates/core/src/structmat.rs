//! Structural 0/1 matrices of the canonical basis.
//!
//! `L_{n,k}` shifts the canonical monomial vector: `L_{n,1}·X_{n+1} = x·X_n`
//! and `L_{n,2}·X_{n+1} = y·X_n`. `J_n^{(i,j)}` extracts every second entry
//! of a vector (offset by the parity flag `j`), and its transpose re-inserts
//! zeros. Both are materialized as dense [`RatMatrix`] values: they are tiny
//! and then reuse the one multiplication kernel.

use crate::matrix::RatMatrix;
use crate::rational::Rational;
use crate::report::CheckRecord;
use num_traits::One;

/// The two coordinate variables, `x_1 = x` and `x_2 = y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub const BOTH: [Var; 2] = [Var::X, Var::Y];

    /// The classical index `k ∈ {1, 2}`.
    pub fn k(self) -> usize {
        match self {
            Var::X => 1,
            Var::Y => 2,
        }
    }

    pub fn from_k(k: usize) -> Option<Var> {
        match k {
            1 => Some(Var::X),
            2 => Some(Var::Y),
            _ => None,
        }
    }

    /// Exponent pair of the monomial `x_k`.
    pub fn exponents(self) -> (u32, u32) {
        match self {
            Var::X => (1, 0),
            Var::Y => (0, 1),
        }
    }

    /// Parity tag `(2-k, k-1)`: the family whose weight is `x_k · W^{(0,0)}`.
    pub fn modified_tag(self) -> FamilyTag {
        match self {
            Var::X => FamilyTag::new(1, 0),
            Var::Y => FamilyTag::new(0, 1),
        }
    }

    /// Parity tag `(k-1, 2-k)`: the family modified by the other variable.
    pub fn other_modified_tag(self) -> FamilyTag {
        match self {
            Var::X => FamilyTag::new(0, 1),
            Var::Y => FamilyTag::new(1, 0),
        }
    }
}

/// Parity tag `(i, j)` with `i, j ∈ {0, 1}` naming one of the four small
/// families; the associated weight is `x^i y^j W^{(0,0)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyTag {
    pub i: u8,
    pub j: u8,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 4] = [
        FamilyTag { i: 0, j: 0 },
        FamilyTag { i: 1, j: 0 },
        FamilyTag { i: 0, j: 1 },
        FamilyTag { i: 1, j: 1 },
    ];

    pub fn new(i: u8, j: u8) -> Self {
        assert!(i <= 1 && j <= 1, "parity flags must be 0 or 1");
        FamilyTag { i, j }
    }

    /// Position in [`FamilyTag::ALL`], used to index per-family arrays.
    pub fn index(self) -> usize {
        match (self.i, self.j) {
            (0, 0) => 0,
            (1, 0) => 1,
            (0, 1) => 2,
            _ => 3,
        }
    }

    pub fn label(self) -> String {
        format!("({},{})", self.i, self.j)
    }
}

/// Shift matrix `L_{n,k}` of shape `(n+1) × (n+2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LMatrix {
    pub n: usize,
    pub var: Var,
    pub matrix: RatMatrix,
}

/// Selection matrix `J_n^{(i,j)}` of shape `(n+1) × (2n+1+i+j)` whose only
/// ones sit at `(h, 2h+j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JMatrix {
    pub n: usize,
    pub tag: FamilyTag,
    pub matrix: RatMatrix,
}

/// Build `L_{n,k}`: the identity padded by a zero column on the right
/// (`k = 1`) or on the left (`k = 2`).
pub fn build_l(n: usize, var: Var) -> LMatrix {
    LMatrix {
        n,
        var,
        matrix: l_mat(n as i64, var),
    }
}

/// Build `J_n^{(i,j)}`.
pub fn build_j(n: usize, tag: FamilyTag) -> JMatrix {
    JMatrix {
        n,
        tag,
        matrix: j_mat(n as i64, tag),
    }
}

/// `L_{n,k}` as a bare matrix. Accepts `n = -1`, where the matrix is the
/// empty `0×1` one; recurrence formulas at degree 0 rely on this so that
/// negative-index terms vanish structurally instead of by special cases.
pub fn l_mat(n: i64, var: Var) -> RatMatrix {
    assert!(n >= -1, "L index out of range");
    let rows = (n + 1) as usize;
    let cols = (n + 2) as usize;
    let offset = match var {
        Var::X => 0,
        Var::Y => 1,
    };
    let mut m = RatMatrix::zeros(rows, cols);
    for r in 0..rows {
        m.set(r, r + offset, Rational::one());
    }
    m
}

/// `J_n^{(i,j)}` as a bare matrix, also accepting `n = -1` (zero rows, and
/// as many columns as the shape rule `2n+1+i+j` leaves, clamped at zero).
pub fn j_mat(n: i64, tag: FamilyTag) -> RatMatrix {
    assert!(n >= -1, "J index out of range");
    let rows = (n + 1) as usize;
    let cols = (2 * n + 1 + tag.i as i64 + tag.j as i64).max(0) as usize;
    let mut m = RatMatrix::zeros(rows, cols);
    for h in 0..rows {
        m.set(h, 2 * h + tag.j as usize, Rational::one());
    }
    m
}

/// Check the four interplay identities between `J` and `L` matrices for all
/// `0 ≤ n ≤ n_max` and both variables, returning one record per identity.
///
/// For `k = 1` the identities read `J_n^{(0,0)} L_{2n,1} = J_n^{(1,0)}`,
/// `J_n^{(1,1)} L_{2n+2,1} = L_{n,1} J_{n+1}^{(0,1)}`,
/// `J_n^{(0,1)} L_{2n+1,1} = J_n^{(1,1)}`, and
/// `J_n^{(1,0)} L_{2n+1,1} = L_{n,1} J_{n+1}^{(0,0)}`; for `k = 2` the
/// `(1,0)`/`(0,1)` superscripts swap.
pub fn verify_jl_identities(n_max: usize) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for n in 0..=(n_max as i64) {
        for var in Var::BOTH {
            let k = var.k();
            let jm = |tag: FamilyTag| j_mat(n, tag);
            let tag00 = FamilyTag::new(0, 0);
            let tag11 = FamilyTag::new(1, 1);
            let tmod = var.modified_tag();
            let tother = var.other_modified_tag();

            let checks: [(usize, RatMatrix, RatMatrix); 4] = [
                (1, &jm(tag00) * &l_mat(2 * n, var), jm(tmod)),
                (
                    2,
                    &jm(tag11) * &l_mat(2 * n + 2, var),
                    &l_mat(n, var) * &j_mat(n + 1, tother),
                ),
                (3, &jm(tother) * &l_mat(2 * n + 1, var), jm(tag11)),
                (
                    4,
                    &jm(tmod) * &l_mat(2 * n + 1, var),
                    &l_mat(n, var) * &j_mat(n + 1, tag00),
                ),
            ];
            for (id, lhs, rhs) in checks {
                let detail = format!("identity {id}, n={n}, k={k}");
                if lhs == rhs {
                    records.push(CheckRecord::pass("jl_identity", detail));
                } else {
                    let witness = format!("lhs {lhs} != rhs {rhs}");
                    records.push(CheckRecord::fail("jl_identity", detail, witness));
                }
            }
        }
    }
    records
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::canonical_vector;
    use crate::poly::PolyVector;
    use crate::rational::rat_int;
    use crate::report::all_passed;

    fn grid(m: &RatMatrix) -> Vec<Vec<i64>> {
        (0..m.rows())
            .map(|r| {
                (0..m.cols())
                    .map(|c| {
                        let v = m.at(r, c);
                        assert!(v.is_integer());
                        i64::try_from(v.to_integer()).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn l_matrices_match_displayed_form() {
        assert_eq!(grid(&l_mat(1, Var::X)), vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(grid(&l_mat(1, Var::Y)), vec![vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn j_matrices_match_displayed_form() {
        assert_eq!(
            grid(&j_mat(1, FamilyTag::new(0, 0))),
            vec![vec![1, 0, 0], vec![0, 0, 1]]
        );
        assert_eq!(
            grid(&j_mat(1, FamilyTag::new(0, 1))),
            vec![vec![0, 1, 0, 0], vec![0, 0, 0, 1]]
        );
        assert_eq!(
            grid(&j_mat(1, FamilyTag::new(1, 1))),
            vec![vec![0, 1, 0, 0, 0], vec![0, 0, 0, 1, 0]]
        );
    }

    #[test]
    fn l_shifts_canonical_vector() {
        for n in 0..=5usize {
            for var in Var::BOTH {
                let shifted =
                    PolyVector::mul_matrix(&l_mat(n as i64, var), &canonical_vector(n + 1));
                let (ex, ey) = var.exponents();
                let expected = canonical_vector(n).mul_power(ex, ey);
                assert_eq!(shifted, expected, "n={n}, var={var:?}");
            }
        }
    }

    #[test]
    fn j_rows_are_orthonormal_selectors() {
        for n in 0..=12i64 {
            for tag in FamilyTag::ALL {
                let j = j_mat(n, tag);
                let jt = j.transpose();
                assert_eq!(&j * &jt, RatMatrix::identity((n + 1) as usize));
                let p = &jt * &j;
                // J^T J is a 0/1 diagonal with trace n+1.
                let mut trace = rat_int(0);
                for r in 0..p.rows() {
                    for c in 0..p.cols() {
                        if r != c {
                            assert!(p.at(r, c) == &rat_int(0));
                        }
                    }
                    trace += p.at(r, r);
                }
                assert_eq!(trace, rat_int(n + 1));
            }
        }
    }

    #[test]
    fn l_has_full_row_rank() {
        for n in 0..=12i64 {
            for var in Var::BOTH {
                assert_eq!(l_mat(n, var).rank(), (n + 1) as usize);
            }
        }
    }

    #[test]
    fn jl_identities_hold_to_twelve() {
        let records = verify_jl_identities(12);
        assert_eq!(records.len(), 4 * 13 * 2);
        assert!(all_passed(&records));
    }

    #[test]
    fn jl_identity_smallest_case() {
        // J_0^{(0,0)} L_{0,1} = [1, 0] = J_0^{(1,0)}.
        let lhs = &j_mat(0, FamilyTag::new(0, 0)) * &l_mat(0, Var::X);
        assert_eq!(grid(&lhs), vec![vec![1, 0]]);
        assert_eq!(lhs, j_mat(0, FamilyTag::new(1, 0)));
    }

    #[test]
    fn corrupted_j_is_flagged() {
        // Misplace one 1 in J_2^{(0,0)} and re-run identity 1 by hand.
        let mut j = j_mat(2, FamilyTag::new(0, 0));
        j.set(1, 2, rat_int(1));
        j.set(1, 3, rat_int(1));
        let lhs = &j * &l_mat(4, Var::X);
        assert_ne!(lhs, j_mat(2, FamilyTag::new(1, 0)));
    }

    #[test]
    fn negative_index_edge_shapes() {
        assert_eq!((l_mat(-1, Var::X).rows(), l_mat(-1, Var::X).cols()), (0, 1));
        let j = j_mat(-1, FamilyTag::new(0, 0));
        assert_eq!((j.rows(), j.cols()), (0, 0));
        let j11 = j_mat(-1, FamilyTag::new(1, 1));
        assert_eq!((j11.rows(), j11.cols()), (0, 1));
    }
}

//! Quadratic decomposition of an xy-symmetric MOPS and its converse.
//!
//! An xy-symmetric slice splits in a zip way: even-degree slices are
//! `S_{2n} = P_n^{(0,0)}(x²,y²) + xy·P_{n-1}^{(1,1)}(x²,y²)` and odd ones
//! `S_{2n+1} = x·P_n^{(1,0)}(x²,y²) + y·P_n^{(0,1)}(x²,y²)`, where the four
//! "big" vectors interleave zeros with monic polynomials in the squared
//! variables. Selecting the nonzero entries with `J` matrices yields four
//! genuine polynomial systems — the small families — and each one is the
//! monic OPS of a Christoffel modification `x^i y^j · W^{(0,0)}` of the
//! pushforward weight. [`decompose`] extracts the families and proves the
//! identification against independently built MOPS; [`assemble_symmetric`]
//! runs the construction backwards from a weight on the positive quadrant.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::moments::MomentFunctional;
use crate::mops::MopsFamily;
use crate::poly::{BivariatePoly, PolyVector};
use crate::rational::{rat, rational_to_string, Rational};
use crate::report::CheckRecord;
use crate::structmat::{j_mat, FamilyTag};

/// A symmetric family together with its four small families and the four
/// zero-interleaved big vectors (polynomials in the squared variables).
///
/// `big[tag]` holds, per degree `n`: `(0,0)` of size `2n+1` with even slots
/// populated, `(1,1)` of size `2n+3` with odd slots, `(1,0)` of size `2n+2`
/// with even slots, `(0,1)` of size `2n+2` with odd slots.
#[derive(Clone, Debug)]
pub struct QuadDecomposition {
    pub symmetric: MopsFamily,
    pub small: [MopsFamily; 4],
    pub big: [Vec<PolyVector>; 4],
}

impl QuadDecomposition {
    pub fn small(&self, tag: FamilyTag) -> &MopsFamily {
        &self.small[tag.index()]
    }

    pub fn big(&self, tag: FamilyTag) -> &[PolyVector] {
        &self.big[tag.index()]
    }

    /// Highest degree to which the `(i,j)` small family is populated.
    pub fn small_depth(&self, tag: FamilyTag) -> usize {
        self.small[tag.index()].max_degree()
    }

    /// Re-check the two reconstruction identities degree by degree.
    pub fn reconstruction_records(&self) -> Vec<CheckRecord> {
        let mut records = Vec::new();
        let d11 = self.small_depth(FamilyTag::new(1, 1));
        let dmax = self.small_depth(FamilyTag::new(0, 0));
        for n in 0..=dmax {
            if 2 * n <= self.symmetric.max_degree() {
                let rebuilt = reconstruct_even(
                    &self.big[FamilyTag::new(0, 0).index()][n],
                    if n >= 1 && n - 1 <= d11 {
                        Some(&self.big[FamilyTag::new(1, 1).index()][n - 1])
                    } else {
                        None
                    },
                );
                records.push(CheckRecord::from_poly_difference(
                    "reconstruction",
                    format!("S_{} from big families", 2 * n),
                    &(&rebuilt - self.symmetric.slice(2 * n)),
                ));
            }
            if 2 * n < self.symmetric.max_degree() {
                let rebuilt = reconstruct_odd(
                    &self.big[FamilyTag::new(1, 0).index()][n],
                    &self.big[FamilyTag::new(0, 1).index()][n],
                );
                records.push(CheckRecord::from_poly_difference(
                    "reconstruction",
                    format!("S_{} from big families", 2 * n + 1),
                    &(&rebuilt - self.symmetric.slice(2 * n + 1)),
                ));
            }
        }
        records
    }

    /// Check `P̂_n^{(i,j)} = J_n^{(i,j)} · gram(big_n, big_n) · (J_n^{(i,j)})ᵀ`
    /// and that the big Gram has zero rows and columns exactly at the
    /// interleaved zero slots.
    pub fn gram_shrink_records(&self) -> Result<Vec<CheckRecord>> {
        let mut records = Vec::new();
        for tag in FamilyTag::ALL {
            let fam = self.small(tag);
            for n in 0..=self.small_depth(tag) {
                let big = &self.big[tag.index()][n];
                let big_gram = fam.functional().gram(big, big)?;
                let j = j_mat(n as i64, tag);
                let shrunk = &(&j * &big_gram) * &j.transpose();
                records.push(CheckRecord::from_difference(
                    "gram_shrink",
                    format!("family {} degree {n}", tag.label()),
                    &(&shrunk - fam.gram(n)),
                ));
                let mut zeros_ok = true;
                for r in 0..big_gram.rows() {
                    let slot_zero = big.get(r).is_zero();
                    for c in 0..big_gram.cols() {
                        if (slot_zero || big.get(c).is_zero()) && !big_gram.at(r, c).is_zero() {
                            zeros_ok = false;
                        }
                    }
                }
                let detail = format!("big gram zero slots, family {} degree {n}", tag.label());
                records.push(if zeros_ok {
                    CheckRecord::pass("gram_shrink", detail)
                } else {
                    CheckRecord::fail("gram_shrink", detail, format!("{big_gram}"))
                });
            }
        }
        Ok(records)
    }

    /// Verify that each modified small family is the MOPS of the Christoffel
    /// chain hung off the base family's functional: `(1,0)` from `x·Ŵ`,
    /// `(0,1)` from `y·Ŵ`, `(1,1)` from `x·y·Ŵ`.
    pub fn weight_identification_records(&self) -> Result<Vec<CheckRecord>> {
        let base = self.small(FamilyTag::new(0, 0)).functional().clone();
        let by_x = base.christoffel(rat(1, 1), rat(0, 1))?;
        let by_y = base.christoffel(rat(0, 1), rat(1, 1))?;
        let by_xy = by_x.christoffel(rat(0, 1), rat(1, 1))?;
        let chains = [
            (FamilyTag::new(1, 0), by_x),
            (FamilyTag::new(0, 1), by_y),
            (FamilyTag::new(1, 1), by_xy),
        ];
        let mut records = Vec::new();
        for (tag, functional) in chains {
            let depth = self.small_depth(tag);
            let rebuilt = MopsFamily::build(&functional, depth)?;
            for n in 0..=depth {
                records.push(CheckRecord::from_poly_difference(
                    "weight_identification",
                    format!("family {} degree {n} vs Christoffel chain", tag.label()),
                    &(rebuilt.slice(n) - self.small(tag).slice(n)),
                ));
            }
        }
        Ok(records)
    }
}

/// Separate a polynomial vector into its even-indexed and odd-indexed parts
/// (both of the original length; their sum is the input).
pub fn zip_split(v: &PolyVector) -> (PolyVector, PolyVector) {
    v.zip_split()
}

fn reconstruct_even(big00: &PolyVector, big11_prev: Option<&PolyVector>) -> PolyVector {
    let even = big00.map(BivariatePoly::double_exponents);
    match big11_prev {
        Some(b) => &even + &b.map(BivariatePoly::double_exponents).mul_power(1, 1),
        None => even,
    }
}

fn reconstruct_odd(big10: &PolyVector, big01: &PolyVector) -> PolyVector {
    let x_part = big10.map(BivariatePoly::double_exponents).mul_power(1, 0);
    let y_part = big01.map(BivariatePoly::double_exponents).mul_power(0, 1);
    &x_part + &y_part
}

/// Strip a symmetry factor `x^i y^j` from every entry of a zip part and
/// substitute the squared variables away. Any nonzero remainder falsifies
/// the claimed representation of the input.
fn strip_and_halve(part: &PolyVector, i: u32, j: u32, what: &str) -> Result<PolyVector> {
    part.try_map(|p| p.div_monomial(i, j).and_then(|q| q.halve_exponents()))
        .ok_or_else(|| {
            Error::DecompositionMismatch(format!(
                "{what}: an entry does not carry the factor x^{i} y^{j} over squared variables"
            ))
        })
}

/// Split a symmetric family into its four small families up to degree
/// `n_small` and certify the result.
///
/// Requires the symmetric family built through degree `2·n_small + 1`; the
/// `(1,1)` family then reaches degree `n_small - 1` (its degree-`n` vector
/// sits inside `S_{2n+2}`), the other three reach `n_small`. Every small
/// family is compared entry by entry against the independently built MOPS of
/// the corresponding pushforward functional; any discrepancy reports
/// [`Error::DecompositionMismatch`].
pub fn decompose(symfam: &MopsFamily, n_small: usize) -> Result<QuadDecomposition> {
    let f = symfam.functional();
    if !f.symmetry().is_xy() {
        return Err(Error::NotSymmetric(format!(
            "cannot quadratically decompose `{}`: not xy-symmetric",
            symfam.label()
        )));
    }
    let needed = 2 * n_small + 1;
    if symfam.max_degree() < needed {
        return Err(Error::InsufficientDepth {
            what: format!("symmetric family `{}`", symfam.label()),
            needed,
            have: symfam.max_degree(),
        });
    }

    let mut big00 = Vec::with_capacity(n_small + 1);
    let mut big11 = Vec::with_capacity(n_small);
    let mut big10 = Vec::with_capacity(n_small + 1);
    let mut big01 = Vec::with_capacity(n_small + 1);
    for n in 0..=n_small {
        let (even_part, odd_part) = symfam.slice(2 * n).zip_split();
        big00.push(strip_and_halve(&even_part, 0, 0, "even slice, factor 1")?);
        if n >= 1 {
            big11.push(strip_and_halve(&odd_part, 1, 1, "even slice, factor xy")?);
        } else if !odd_part.is_zero() {
            return Err(Error::DecompositionMismatch(
                "degree-0 slice has a spurious odd part".into(),
            ));
        }
        let (even_part, odd_part) = symfam.slice(2 * n + 1).zip_split();
        big10.push(strip_and_halve(&even_part, 1, 0, "odd slice, factor x")?);
        big01.push(strip_and_halve(&odd_part, 0, 1, "odd slice, factor y")?);
    }

    let big = [big00, big10, big01, big11];
    let mut small = Vec::with_capacity(4);
    for tag in FamilyTag::ALL {
        let vectors = &big[tag.index()];
        let push = f.quad_pushforward(tag)?;
        let independent = MopsFamily::build(&push, vectors.len() - 1)?;
        for (n, bigv) in vectors.iter().enumerate() {
            let extracted = PolyVector::mul_matrix(&j_mat(n as i64, tag), bigv);
            let diff = &extracted - independent.slice(n);
            if !diff.is_zero() {
                return Err(Error::DecompositionMismatch(format!(
                    "family {} degree {n}: extracted {extracted} differs from MOPS {}",
                    tag.label(),
                    independent.slice(n)
                )));
            }
        }
        small.push(independent);
    }
    let small: [MopsFamily; 4] = small.try_into().expect("four families");

    Ok(QuadDecomposition {
        symmetric: symfam.clone(),
        small,
        big,
    })
}

/// Run the decomposition backwards: from a weight `Ŵ` on the positive
/// quadrant, build the four small MOPS (of `Ŵ`, `x·Ŵ`, `y·Ŵ`, `x·y·Ŵ`),
/// inflate them with `Jᵀ`, and assemble the symmetric family of
/// `4|x||y|·Ŵ(x²,y²)` through degree `n_max`. The assembled system is
/// certified to be the MOPS of the pullback functional by exact Gram checks.
pub fn assemble_symmetric(g: &MomentFunctional, n_max: usize) -> Result<QuadDecomposition> {
    let d00 = n_max / 2;
    let d10 = if n_max >= 1 { (n_max - 1) / 2 } else { 0 };
    let d11 = d00.saturating_sub(1);

    let fam00 = MopsFamily::build(g, d00)?;
    let g10 = g.christoffel(rat(1, 1), rat(0, 1))?;
    let fam10 = MopsFamily::build(&g10, d10)?;
    let g01 = g.christoffel(rat(0, 1), rat(1, 1))?;
    let fam01 = MopsFamily::build(&g01, d10)?;
    let g11 = g10.christoffel(rat(0, 1), rat(1, 1))?;
    let fam11 = MopsFamily::build(&g11, d11)?;

    let inflate = |fam: &MopsFamily, tag: FamilyTag| -> Vec<PolyVector> {
        (0..=fam.max_degree())
            .map(|n| PolyVector::mul_matrix(&j_mat(n as i64, tag).transpose(), fam.slice(n)))
            .collect()
    };
    let big = [
        inflate(&fam00, FamilyTag::new(0, 0)),
        inflate(&fam10, FamilyTag::new(1, 0)),
        inflate(&fam01, FamilyTag::new(0, 1)),
        inflate(&fam11, FamilyTag::new(1, 1)),
    ];

    let mut slices = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let slice = if n % 2 == 0 {
            let m = n / 2;
            reconstruct_even(&big[0][m], if m >= 1 { Some(&big[3][m - 1]) } else { None })
        } else {
            let m = (n - 1) / 2;
            reconstruct_odd(&big[1][m], &big[2][m])
        };
        slices.push(slice);
    }

    let pullback = g.quad_pullback();
    let symmetric = MopsFamily::from_parts(
        pullback,
        slices,
        format!("assembled from {}", g.description()),
    )?;
    symmetric.check_monic()?;
    let records = symmetric.verify_orthogonality()?;
    if let Some(bad) = records.iter().find(|r| !r.passed) {
        return Err(Error::IdentityViolated(format!(
            "assembled family is not orthogonal: {} ({})",
            bad.detail,
            bad.witness.clone().unwrap_or_default()
        )));
    }

    Ok(QuadDecomposition {
        symmetric,
        small: [fam00, fam10, fam01, fam11],
        big,
    })
}

/// One row of the ball-simplex correspondence table.
#[derive(Clone, Debug)]
pub struct XuRow {
    /// Ball-side entry, e.g. `S_{2,0}`.
    pub ball_entry: String,
    /// Simplex-side polynomial, e.g. `P_{1,0}(u,v) = u - 1/4`.
    pub simplex_entry: String,
    /// Rendered simplex polynomial in the variables `(u, v)`.
    pub polynomial: String,
}

/// Outcome of the ball-simplex case study.
#[derive(Clone, Debug)]
pub struct XuCaseStudy {
    pub mu: Rational,
    pub n_max: usize,
    pub records: Vec<CheckRecord>,
    pub table: Vec<XuRow>,
    /// The four families with their identified simplex weights.
    pub family_weights: Vec<(String, String)>,
}

impl XuCaseStudy {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.records)
    }
}

/// The ball-simplex case study for weight `(1-x²-y²)^mu`.
///
/// Builds the symmetric ball family and, independently through the Dirichlet
/// moment recurrences, the simplex family of `(uv)^{-1/2}(1-u-v)^mu`; checks
/// the even-even identification `S_{2n,2k}(x,y) = P_{n,k}(x²,y²)` for all
/// `n ≤ n_max`, `0 ≤ k ≤ n`, and certifies the three leftover families
/// orthogonal for the remaining simplex weights
/// `u^{±1/2} v^{∓1/2} (1-u-v)^mu` and `(uv)^{1/2}(1-u-v)^mu`.
pub fn xu_case_study(mu: &Rational, n_max: usize) -> Result<XuCaseStudy> {
    let ball = MomentFunctional::ball(mu.clone())?;
    let symfam = MopsFamily::build(&ball, 2 * n_max + 1)?;
    let dec = decompose(&symfam, n_max)?;

    let mut records = Vec::new();
    let mut table = Vec::new();

    // Even-even identification against the independent simplex oracle.
    let half = rat(1, 2);
    let simp00 = MomentFunctional::simplex(-half.clone(), -half.clone(), mu.clone())?;
    let simfam00 = MopsFamily::build(&simp00, n_max)?;
    for n in 0..=n_max {
        for k in 0..=n {
            let ball_entry = symfam.slice(2 * n).get(2 * k);
            let simplex_entry = simfam00.slice(n).get(k);
            let diff = ball_entry - &simplex_entry.double_exponents();
            let detail = format!("S_{{{},{}}}(x,y) = P_{{{n},{k}}}(x^2,y^2)", 2 * n, 2 * k);
            records.push(if diff.is_zero() {
                CheckRecord::pass("xu_identity", detail)
            } else {
                CheckRecord::fail("xu_identity", detail, format!("difference {diff}"))
            });
            table.push(XuRow {
                ball_entry: format!("S_{{{},{}}}", 2 * n, 2 * k),
                simplex_entry: format!("P_{{{n},{k}}}"),
                polynomial: simplex_entry.display_with("u", "v"),
            });
        }
    }

    // The three leftover families, certified against independently built
    // simplex functionals.
    let mu_str = rational_to_string(mu);
    let leftovers: [(FamilyTag, Rational, Rational, &str); 3] = [
        (
            FamilyTag::new(1, 0),
            half.clone(),
            -half.clone(),
            "u^{1/2} v^{-1/2}",
        ),
        (
            FamilyTag::new(0, 1),
            -half.clone(),
            half.clone(),
            "u^{-1/2} v^{1/2}",
        ),
        (
            FamilyTag::new(1, 1),
            half.clone(),
            half.clone(),
            "u^{1/2} v^{1/2}",
        ),
    ];
    let mut family_weights = vec![(
        "(0,0)".to_string(),
        format!("u^{{-1/2}} v^{{-1/2}} (1-u-v)^{{{mu_str}}}"),
    )];
    for (tag, a, b, weight_label) in leftovers {
        let simf = MomentFunctional::simplex(a, b, mu.clone())?;
        let fam = dec.small(tag);
        let depth = fam.max_degree();
        for n in 0..=depth {
            for m in (n + 1)..=depth {
                let cross = simf.gram(fam.slice(n), fam.slice(m))?;
                records.push(CheckRecord::from_difference(
                    "xu_leftover_orthogonality",
                    format!(
                        "family {} cross-gram ({n},{m}) under {weight_label}",
                        tag.label()
                    ),
                    &cross,
                ));
            }
            let gram = simf.gram(fam.slice(n), fam.slice(n))?;
            let detail = format!(
                "family {} gram {n} positive definite under {weight_label}",
                tag.label()
            );
            records.push(match gram.is_positive_definite() {
                Ok(true) => CheckRecord::pass("xu_leftover_orthogonality", detail),
                Ok(false) => {
                    CheckRecord::fail("xu_leftover_orthogonality", detail, format!("{gram}"))
                }
                Err(e) => CheckRecord::fail("xu_leftover_orthogonality", detail, e.to_string()),
            });
        }
        family_weights.push((tag.label(), format!("{weight_label} (1-u-v)^{{{mu_str}}}")));
    }

    Ok(XuCaseStudy {
        mu: mu.clone(),
        n_max,
        records,
        table,
        family_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use crate::report::all_passed;

    fn sq() -> MomentFunctional {
        MomentFunctional::square_legendre()
    }

    fn poly(terms: &[(u32, u32, Rational)]) -> BivariatePoly {
        BivariatePoly::from_terms(terms.iter().cloned())
    }

    #[test]
    fn zip_split_square_slice_three() {
        let fam = MopsFamily::build(&sq(), 3).unwrap();
        let (even, odd) = zip_split(fam.slice(3));
        // [x^3 - 3x/5, 0, x(y^2 - 1/3), 0] and [0, (x^2-1/3)y, 0, y^3 - 3y/5].
        assert_eq!(
            even.get(0),
            &poly(&[(3, 0, rat_int(1)), (1, 0, rat(-3, 5))])
        );
        assert!(even.get(1).is_zero() && even.get(3).is_zero());
        assert_eq!(
            even.get(2),
            &poly(&[(1, 2, rat_int(1)), (1, 0, rat(-1, 3))])
        );
        assert_eq!(odd.get(1), &poly(&[(2, 1, rat_int(1)), (0, 1, rat(-1, 3))]));
        assert_eq!(odd.get(3), &poly(&[(0, 3, rat_int(1)), (0, 1, rat(-3, 5))]));
    }

    #[test]
    fn decompose_square_small_families() {
        let symfam = MopsFamily::build(&sq(), 5).unwrap();
        let dec = decompose(&symfam, 2).unwrap();

        // P̂_1^{(0,0)} = [u - 1/3, v - 1/3].
        let f00 = dec.small(FamilyTag::new(0, 0));
        assert_eq!(
            f00.slice(1).get(0),
            &poly(&[(1, 0, rat_int(1)), (0, 0, rat(-1, 3))])
        );
        // P̂_0^{(1,1)} = [1].
        let f11 = dec.small(FamilyTag::new(1, 1));
        assert_eq!(f11.slice(0).get(0), &BivariatePoly::one());
        // P̂_1^{(1,0)} = [u - 3/5, v - 1/3].
        let f10 = dec.small(FamilyTag::new(1, 0));
        assert_eq!(
            f10.slice(1).get(0),
            &poly(&[(1, 0, rat_int(1)), (0, 0, rat(-3, 5))])
        );
        assert_eq!(
            f10.slice(1).get(1),
            &poly(&[(0, 1, rat_int(1)), (0, 0, rat(-1, 3))])
        );
        // Big vector sizes: (0,0) has 2n+1 entries, (1,1) has 2n+3, the
        // mixed ones 2n+2.
        assert_eq!(dec.big(FamilyTag::new(0, 0))[2].len(), 5);
        assert_eq!(dec.big(FamilyTag::new(1, 1))[1].len(), 5);
        assert_eq!(dec.big(FamilyTag::new(1, 0))[2].len(), 6);
        assert_eq!(dec.big(FamilyTag::new(0, 1))[2].len(), 6);

        assert!(all_passed(&dec.reconstruction_records()));
        assert!(all_passed(&dec.gram_shrink_records().unwrap()));
        assert!(all_passed(&dec.weight_identification_records().unwrap()));
    }

    #[test]
    fn decompose_rejects_asymmetric_and_shallow() {
        let g = sq().quad_pushforward(FamilyTag::new(0, 0)).unwrap();
        let fam = MopsFamily::build(&g, 3).unwrap();
        assert!(matches!(decompose(&fam, 1), Err(Error::NotSymmetric(_))));
        let symfam = MopsFamily::build(&sq(), 3).unwrap();
        assert!(matches!(
            decompose(&symfam, 2),
            Err(Error::InsufficientDepth { .. })
        ));
    }

    #[test]
    fn decompose_flags_symmetry_violation() {
        // A hand-built "family" that is not xy-symmetric in slice 2.
        let fam = MopsFamily::build(&sq(), 3).unwrap();
        let mut slices: Vec<PolyVector> = (0..=3).map(|n| fam.slice(n).clone()).collect();
        let mut bad = slices[2].get(0).clone();
        bad.add_term(1, 0, rat(1, 9));
        slices[2] = PolyVector::new(vec![
            bad,
            slices[2].get(1).clone(),
            slices[2].get(2).clone(),
        ]);
        let broken = MopsFamily::from_parts(sq(), slices, "tampered").unwrap();
        assert!(matches!(
            decompose(&broken, 1),
            Err(Error::DecompositionMismatch(_))
        ));
    }

    #[test]
    fn assemble_square_round_trip() {
        let g = sq().quad_pushforward(FamilyTag::new(0, 0)).unwrap();
        let dec = assemble_symmetric(&g, 5).unwrap();
        let direct = MopsFamily::build(&sq(), 5).unwrap();
        for n in 0..=5 {
            assert_eq!(dec.symmetric.slice(n), direct.slice(n), "slice {n}");
        }
        assert_eq!(
            dec.symmetric.slice(1).get(0),
            &BivariatePoly::monomial(1, 0)
        );
        assert_eq!(
            dec.symmetric.slice(1).get(1),
            &BivariatePoly::monomial(0, 1)
        );
    }

    #[test]
    fn assemble_ball_round_trip() {
        let ball = MomentFunctional::ball(rat_int(1)).unwrap();
        let g = ball.quad_pushforward(FamilyTag::new(0, 0)).unwrap();
        let dec = assemble_symmetric(&g, 2).unwrap();
        let direct = MopsFamily::build(&ball, 2).unwrap();
        assert_eq!(dec.symmetric.slice(2), direct.slice(2));
    }

    #[test]
    fn decompose_inverts_assemble() {
        // Start on the quadrant side, assemble a symmetric family, zip it
        // back apart: the small families must be the ones assembled from.
        let g = MomentFunctional::ball(rat_int(2))
            .unwrap()
            .quad_pushforward(FamilyTag::new(0, 0))
            .unwrap();
        let assembled = assemble_symmetric(&g, 7).unwrap();
        let split = decompose(&assembled.symmetric, 3).unwrap();
        for tag in FamilyTag::ALL {
            let depth = split.small_depth(tag).min(assembled.small_depth(tag));
            for n in 0..=depth {
                assert_eq!(
                    split.small(tag).slice(n),
                    assembled.small(tag).slice(n),
                    "family {} degree {n}",
                    tag.label()
                );
            }
        }
    }

    #[test]
    fn xu_case_study_mu_zero() {
        let study = xu_case_study(&rat_int(0), 1).unwrap();
        assert!(study.passed());
        // S_{2,0} = x² - 1/4 pairs with P_{1,0} = u - 1/4.
        let row = study
            .table
            .iter()
            .find(|r| r.ball_entry == "S_{2,0}")
            .unwrap();
        assert_eq!(row.polynomial, "u - 1/4");
        assert_eq!(study.family_weights.len(), 4);
    }
}

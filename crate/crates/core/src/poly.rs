//! Sparse bivariate polynomials with exact rational coefficients, and the
//! degree-slice vectors of them that the recurrence algebra manipulates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::matrix::RatMatrix;
use crate::rational::{rational_to_string, Rational};

/// Sparse map from exponent pairs `(i, j)` (for `x^i y^j`) to coefficients.
///
/// Zero coefficients are never stored; the zero polynomial is the empty map
/// and reports `None` as its total degree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    /// The monomial `x^i y^j` with coefficient 1.
    pub fn monomial(i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, Rational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        BivariatePoly {
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    /// Multiply by the monomial `x^i y^j`.
    pub fn mul_power(&self, i: u32, j: u32) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    /// Exact division by the monomial `x^i y^j`; `None` if any term of the
    /// polynomial is not divisible.
    pub fn div_monomial(&self, i: u32, j: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if a < i || b < j {
                return None;
            }
            terms.insert((a - i, b - j), c.clone());
        }
        Some(BivariatePoly { terms })
    }

    /// Substitute `(x, y) -> (x², y²)` read backwards: halve every exponent.
    /// `None` when some exponent is odd.
    pub fn halve_exponents(&self) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            if a % 2 != 0 || b % 2 != 0 {
                return None;
            }
            terms.insert((a / 2, b / 2), c.clone());
        }
        Some(BivariatePoly { terms })
    }

    /// Substitute `(x, y) -> (x², y²)`: double every exponent.
    pub fn double_exponents(&self) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((2 * a, 2 * b), c.clone()))
                .collect(),
        }
    }

    /// Render with custom variable names, highest total degree first.
    pub fn display_with(&self, x: &str, y: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(a, b)| std::cmp::Reverse((a + b, a)));
        let mut out = String::new();
        for (idx, &&(a, b)) in keys.iter().enumerate() {
            let c = &self.terms[&(a, b)];
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match (a, b) {
                (0, 0) => String::new(),
                (1, 0) => x.to_string(),
                (0, 1) => y.to_string(),
                (a, 0) => format!("{x}^{a}"),
                (0, b) => format!("{y}^{b}"),
                (1, 1) => format!("{x} {y}"),
                (a, 1) => format!("{x}^{a} {y}"),
                (1, b) => format!("{x} {y}^{b}"),
                (a, b) => format!("{x}^{a} {y}^{b}"),
            };
            if mono.is_empty() {
                out.push_str(&rational_to_string(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&rational_to_string(&abs));
                out.push(' ');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x", "y"))
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(a, b), c1) in &self.terms {
            for (&(i, j), c2) in &rhs.terms {
                out.add_term(a + i, b + j, c1 * c2);
            }
        }
        out
    }
}

/// Ordered list of polynomials; the degree-`n` slice of a polynomial system
/// has `n+1` entries, the entry `j` led by `x^{n-j} y^j`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyVector {
    entries: Vec<BivariatePoly>,
}

impl PolyVector {
    pub fn new(entries: Vec<BivariatePoly>) -> Self {
        PolyVector { entries }
    }

    pub fn zeros(len: usize) -> Self {
        PolyVector {
            entries: vec![BivariatePoly::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &BivariatePoly {
        &self.entries[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &BivariatePoly> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BivariatePoly::is_zero)
    }

    /// Separate into the even-indexed and odd-indexed parts, both of the
    /// original length, whose sum is the original vector.
    pub fn zip_split(&self) -> (PolyVector, PolyVector) {
        let mut even = PolyVector::zeros(self.len());
        let mut odd = PolyVector::zeros(self.len());
        for (idx, p) in self.entries.iter().enumerate() {
            if idx % 2 == 0 {
                even.entries[idx] = p.clone();
            } else {
                odd.entries[idx] = p.clone();
            }
        }
        (even, odd)
    }

    /// Entry-wise multiplication by the monomial `x^i y^j`.
    pub fn mul_power(&self, i: u32, j: u32) -> Self {
        self.map(|p| p.mul_power(i, j))
    }

    /// Entry-wise multiplication by a polynomial.
    pub fn mul_poly(&self, q: &BivariatePoly) -> Self {
        self.map(|p| p * q)
    }

    pub fn map(&self, f: impl Fn(&BivariatePoly) -> BivariatePoly) -> Self {
        PolyVector {
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&BivariatePoly) -> Option<BivariatePoly>) -> Option<Self> {
        let mut entries = Vec::with_capacity(self.len());
        for p in &self.entries {
            entries.push(f(p)?);
        }
        Some(PolyVector { entries })
    }

    /// Matrix times vector of polynomials; `m.cols()` must equal `v.len()`.
    pub fn mul_matrix(m: &RatMatrix, v: &PolyVector) -> PolyVector {
        assert_eq!(m.cols(), v.len(), "matrix-vector shape mismatch");
        let mut entries = Vec::with_capacity(m.rows());
        for r in 0..m.rows() {
            let mut acc = BivariatePoly::zero();
            for c in 0..m.cols() {
                let coeff = m.at(r, c);
                if coeff.is_zero() {
                    continue;
                }
                acc = &acc + &v.entries[c].scale(coeff);
            }
            entries.push(acc);
        }
        PolyVector { entries }
    }
}

impl Add for &PolyVector {
    type Output = PolyVector;
    fn add(self, rhs: &PolyVector) -> PolyVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        PolyVector {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &PolyVector {
    type Output = PolyVector;
    fn sub(self, rhs: &PolyVector) -> PolyVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        PolyVector {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The canonical monomial vector `X_n = [x^n, x^{n-1}y, ..., y^n]`.
pub fn canonical_vector(n: usize) -> PolyVector {
    PolyVector::new(
        (0..=n)
            .map(|j| BivariatePoly::monomial((n - j) as u32, j as u32))
            .collect(),
    )
}

/// Monomials of total degree at most `d`, ordered by total degree and then
/// by the `y` exponent; this is the column order of every moment matrix.
pub fn monomials_up_to(d: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for m in 0..=d {
        for j in 0..=m {
            out.push(((m - j) as u32, j as u32));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn no_zero_terms_are_stored() {
        let mut p = BivariatePoly::monomial(1, 0);
        p.add_term(1, 0, rat_int(-1));
        assert!(p.is_zero());
        assert_eq!(p.total_degree(), None);
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn arithmetic_and_degree() {
        let p = BivariatePoly::from_terms([(2, 0, rat_int(1)), (0, 0, rat(-1, 3))]);
        let q = BivariatePoly::monomial(1, 1);
        let prod = &p * &q;
        assert_eq!(prod.coeff(3, 1), rat_int(1));
        assert_eq!(prod.coeff(1, 1), rat(-1, 3));
        assert_eq!(prod.total_degree(), Some(4));
        assert_eq!((&p - &p).total_degree(), None);
    }

    #[test]
    fn monomial_division() {
        let p = BivariatePoly::from_terms([(3, 1, rat_int(2)), (1, 1, rat(-1, 2))]);
        let q = p.div_monomial(1, 1).unwrap();
        assert_eq!(
            q,
            BivariatePoly::from_terms([(2, 0, rat_int(2)), (0, 0, rat(-1, 2))])
        );
        assert!(p.div_monomial(2, 0).is_none());
        assert!(BivariatePoly::zero().div_monomial(5, 5).unwrap().is_zero());
    }

    #[test]
    fn exponent_halving_and_doubling() {
        let p = BivariatePoly::from_terms([(4, 2, rat_int(1)), (0, 0, rat(-1, 4))]);
        let h = p.halve_exponents().unwrap();
        assert_eq!(h.coeff(2, 1), rat_int(1));
        assert_eq!(h.double_exponents(), p);
        assert!(BivariatePoly::monomial(1, 0).halve_exponents().is_none());
    }

    #[test]
    fn zip_split_parity() {
        let v = PolyVector::new(vec![
            BivariatePoly::from_terms([(2, 0, rat_int(1)), (0, 0, rat(-1, 3))]),
            BivariatePoly::monomial(1, 1),
            BivariatePoly::from_terms([(0, 2, rat_int(1)), (0, 0, rat(-1, 3))]),
        ]);
        let (even, odd) = v.zip_split();
        assert!(odd.get(0).is_zero() && odd.get(2).is_zero());
        assert!(even.get(1).is_zero());
        assert_eq!(&(&even + &odd), &v);

        let z = PolyVector::zeros(4);
        let (ze, zo) = z.zip_split();
        assert!(ze.is_zero() && zo.is_zero());
    }

    #[test]
    fn display_orders_by_degree() {
        let p = BivariatePoly::from_terms([(1, 0, rat_int(1)), (0, 0, rat(-1, 4))]);
        assert_eq!(p.display_with("u", "v"), "u - 1/4");
        let q =
            BivariatePoly::from_terms([(2, 0, rat_int(1)), (1, 1, rat(-3, 5)), (0, 0, rat_int(2))]);
        assert_eq!(q.to_string(), "x^2 - 3/5 x y + 2");
    }

    #[test]
    fn canonical_vector_shape() {
        let x2 = canonical_vector(2);
        assert_eq!(x2.len(), 3);
        assert_eq!(x2.get(0), &BivariatePoly::monomial(2, 0));
        assert_eq!(x2.get(1), &BivariatePoly::monomial(1, 1));
        assert_eq!(x2.get(2), &BivariatePoly::monomial(0, 2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = BivariatePoly> {
            proptest::collection::vec(((0u32..4, 0u32..4), -5i64..=5), 0..6).prop_map(|ts| {
                BivariatePoly::from_terms(ts.into_iter().map(|((i, j), c)| (i, j, rat_int(c))))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn multiplication_distributes(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                let lhs = &(&p + &q) * &r;
                let rhs = &(&p * &r) + &(&q * &r);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn halve_inverts_double(p in arb_poly()) {
                prop_assert_eq!(p.double_exponents().halve_exponents().unwrap(), p);
            }
        }
    }
}

//! Exact dense rational matrices.
//!
//! Everything downstream — Gram matrices, recurrence coefficients, selection
//! matrices — lives in this one dense type, so a single multiplication kernel
//! and a single solver serve the whole crate. Linear solves and inverses run
//! fraction-free (Bareiss) elimination on denominator-cleared rows, which
//! keeps intermediate integers of moderate size even for Gram matrices of
//! high-degree polynomial slices; singularity is detected by an exact zero
//! pivot, never by a tolerance.
//!
//! Matrices with zero rows or zero columns are legal throughout and behave as
//! annihilators in products: `(a×0)·(0×b)` is the `a×b` zero matrix. Degree-0
//! edge cases of the recurrence algebra depend on this.

// Index arithmetic mirrors the textbook elimination kernels.
#![allow(clippy::needless_range_loop)]

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Build from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        RatMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if self.at(r, c) != self.at(c, r) {
                    return false;
                }
            }
        }
        true
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    /// Submatrix of the given row and column ranges.
    pub fn slice(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Self::from_fn(r1 - r0, c1 - c0, |r, c| self.at(r0 + r, c0 + c).clone())
    }

    /// Write `src` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, src: &RatMatrix) {
        assert!(r0 + src.rows <= self.rows && c0 + src.cols <= self.cols);
        for r in 0..src.rows {
            for c in 0..src.cols {
                self.set(r0 + r, c0 + c, src.at(r, c).clone());
            }
        }
    }

    /// Solve `A·X = B` exactly, where `A` is this (square) matrix.
    ///
    /// Runs Bareiss fraction-free elimination on the denominator-cleared
    /// augmented matrix, then back-substitutes over the rationals. Fails with
    /// [`Error::SingularMatrix`] when some pivot column has no nonzero entry.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        assert_eq!(self.rows, self.cols, "coefficient matrix must be square");
        assert_eq!(self.rows, rhs.rows, "right-hand side has wrong row count");
        let n = self.rows;
        let m = rhs.cols;
        if n == 0 {
            return Ok(RatMatrix::zeros(0, m));
        }

        // Clear denominators row by row: the row operations below preserve
        // the solution set, and integer entries make Bareiss divisions exact.
        let width = n + m;
        let mut aug: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut lcm = BigInt::one();
            for c in 0..n {
                lcm = lcm.lcm(self.at(r, c).denom());
            }
            for c in 0..m {
                lcm = lcm.lcm(rhs.at(r, c).denom());
            }
            let mut row = Vec::with_capacity(width);
            for c in 0..n {
                let v = self.at(r, c);
                row.push(v.numer() * (&lcm / v.denom()));
            }
            for c in 0..m {
                let v = rhs.at(r, c);
                row.push(v.numer() * (&lcm / v.denom()));
            }
            aug.push(row);
        }

        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !aug[r][k].is_zero());
            let pr = match pivot_row {
                Some(pr) => pr,
                None => return Err(Error::SingularMatrix),
            };
            aug.swap(k, pr);
            for i in (k + 1)..n {
                for j in (k + 1)..width {
                    let num = &aug[k][k] * &aug[i][j] - &aug[i][k] * &aug[k][j];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                    aug[i][j] = num / &prev;
                }
                aug[i][k] = BigInt::zero();
            }
            prev = aug[k][k].clone();
        }

        let mut x = RatMatrix::zeros(n, m);
        for i in (0..n).rev() {
            for c in 0..m {
                let mut acc = Rational::from_integer(aug[i][n + c].clone());
                for j in (i + 1)..n {
                    acc -= Rational::from_integer(aug[i][j].clone()) * x.at(j, c);
                }
                let piv = Rational::from_integer(aug[i][i].clone());
                x.set(i, c, acc / piv);
            }
        }
        Ok(x)
    }

    /// Exact inverse; `A·A⁻¹ = A⁻¹·A = I` or [`Error::SingularMatrix`].
    pub fn invert(&self) -> Result<RatMatrix> {
        assert_eq!(self.rows, self.cols, "only square matrices invert");
        self.solve(&RatMatrix::identity(self.rows))
    }

    /// Exact rank, by plain rational elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let pivot = (rank..self.rows).find(|&r| !a[r][col].is_zero());
            let pr = match pivot {
                Some(pr) => pr,
                None => continue,
            };
            a.swap(rank, pr);
            for r in (rank + 1)..self.rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &a[rank][col];
                for c in col..self.cols {
                    let sub = &f * &a[rank][c];
                    a[r][c] = &a[r][c] - &sub;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact positive-definiteness of a symmetric matrix: true iff every
    /// leading principal minor is strictly positive.
    ///
    /// The minors come out of pivot-free Bareiss elimination: after step `k`
    /// the pivot equals the `(k+1)`-st leading minor up to a positive factor
    /// from denominator clearing, so the sign test is exact. A zero pivot is
    /// a zero minor and immediately rules out definiteness.
    pub fn is_positive_definite(&self) -> Result<bool> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric(format!(
                "{}x{} matrix is not symmetric",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(true);
        }
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut lcm = BigInt::one();
            for c in 0..n {
                lcm = lcm.lcm(self.at(r, c).denom());
            }
            a.push(
                (0..n)
                    .map(|c| {
                        let v = self.at(r, c);
                        v.numer() * (&lcm / v.denom())
                    })
                    .collect(),
            );
        }
        let mut prev = BigInt::one();
        for k in 0..n {
            if !a[k][k].is_positive() {
                return Ok(false);
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    debug_assert!((&num % &prev).is_zero());
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(true)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix({}x{}) {}", self.rows, self.cols, self)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", crate::rational::rational_to_string(self.at(r, c)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "product shape mismatch: {}x{} times {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c) + a * b;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;

    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "sum shape mismatch"
        );
        RatMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + rhs.at(r, c))
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;

    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "difference shape mismatch"
        );
        RatMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - rhs.at(r, c))
    }
}

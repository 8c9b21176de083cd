//! Exact rational construction of bivariate monic orthogonal polynomial
//! systems (MOPS) and their quadratic decomposition.
//!
//! A weight function enters the library only through its normalized moment
//! oracle `(h, k) -> μ(h,k)/μ(0,0)`, so every quantity downstream — Gram
//! matrices, recurrence coefficients, connection matrices — is an exact
//! rational number and every identity is checked to exact zero.
//!
//! The main pipeline:
//!
//! * [`moments::MomentFunctional`] — built-in weight families (square
//!   Legendre, ball, simplex), Christoffel modifications `λ·W` with
//!   `λ = a·x + b·y`, and the quadratic pushforward/pullback between an
//!   xy-symmetric weight on the plane and its image under `(x,y) ↦ (x²,y²)`.
//! * [`mops::MopsFamily`] — degree-by-degree construction of the monic OPS
//!   of a functional, with Gram matrices and three-term recurrence
//!   coefficients in both the symmetric `Γ` form and the general `D̂`/`Ĉ`
//!   form.
//! * [`quadratic`] — splitting a symmetric MOPS into the four small families
//!   in the squared variables, the converse assembly, and the ball–simplex
//!   case study.
//! * [`backlund`] — closed-form recurrence coefficients of the four small
//!   families as selection-matrix sandwiches of the symmetric `Γ`s, the
//!   short-relation `Γ̂` matrices, Christoffel connection matrices, and the
//!   block `LU`/`UL` factorization of the Jacobi operators.

pub mod backlund;
pub mod error;
pub mod matrix;
pub mod moments;
pub mod mops;
pub mod poly;
pub mod quadratic;
pub mod rational;
pub mod report;
pub mod structmat;

pub use error::{Error, Result};
pub use matrix::RatMatrix;
pub use moments::{MomentFunctional, Symmetry, WeightSpec};
pub use mops::MopsFamily;
pub use poly::{BivariatePoly, PolyVector};
pub use quadratic::QuadDecomposition;
pub use rational::{parse_rational, rational_to_string, Rational};
pub use report::CheckRecord;
pub use structmat::{FamilyTag, Var};

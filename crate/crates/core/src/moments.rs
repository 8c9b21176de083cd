//! Weight functions represented purely by normalized moment oracles.
//!
//! A functional hands out exact rationals `moment(h, k) = μ(h,k)/μ(0,0)`;
//! nothing else about the weight is ever consulted. Monic orthogonal systems
//! are invariant under positive scaling of the functional, so transcendental
//! common factors (the `π` in ball moments, the Γ-function mass of a simplex
//! weight) cancel in the normalization and everything downstream stays
//! rational. Built-in families evaluate closed ratio recurrences; derived
//! functionals (Christoffel modification, quadratic pushforward/pullback)
//! delegate to their parent. All moments are memoized behind a lock that is
//! safe for concurrent readers.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::poly::{BivariatePoly, PolyVector};
use crate::rational::{parse_rational, rat_int, rational_to_string, Rational};
use crate::structmat::FamilyTag;

/// Reflection invariances of a weight. `Xy` forces every moment with an odd
/// exponent to vanish (and implies central symmetry).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    #[default]
    None,
    X,
    Y,
    Xy,
}

impl Symmetry {
    /// True when the symmetry alone forces `μ(h,k) = 0`.
    pub fn forces_zero(self, h: u32, k: u32) -> bool {
        match self {
            Symmetry::None => false,
            Symmetry::X => h % 2 == 1,
            Symmetry::Y => k % 2 == 1,
            Symmetry::Xy => h % 2 == 1 || k % 2 == 1,
        }
    }

    pub fn is_xy(self) -> bool {
        self == Symmetry::Xy
    }
}

enum Kernel {
    /// Constant weight on the square `[-1,1]²`: `μ(h,k) = 1/((h+1)(k+1))`
    /// for even exponents, zero otherwise.
    SquareLegendre,
    /// `(1 - x² - y²)^mu` on the unit disk, `mu > -1`.
    Ball { mu: Rational },
    /// `x^a y^b (1-x-y)^c` on the triangle `x,y ≥ 0, x+y ≤ 1`, all
    /// parameters `> -1`.
    Simplex {
        a: Rational,
        b: Rational,
        c: Rational,
    },
    /// Explicit normalized table; anything outside it is unavailable.
    Custom {
        table: BTreeMap<(u32, u32), Rational>,
    },
    /// Multiplication of the parent weight by `λ = a·x + b·y`, renormalized.
    Christoffel {
        parent: MomentFunctional,
        a: Rational,
        b: Rational,
        mass: Rational,
    },
    /// Image of an xy-symmetric parent under `(x,y) ↦ (x²,y²)`, shifted by
    /// the parity tag: `μ(h,k) = parent(2h+2i, 2k+2j)/parent(2i, 2j)`.
    Pushforward {
        parent: MomentFunctional,
        tag: FamilyTag,
        base: Rational,
    },
    /// The converse: even moments copy the parent, odd moments vanish.
    Pullback { parent: MomentFunctional },
}

struct Inner {
    kernel: Kernel,
    symmetry: Symmetry,
    description: String,
    memo: RwLock<HashMap<(u32, u32), Rational>>,
}

/// A weight function, represented by its normalized moment oracle
/// (`moment(0,0) = 1`) plus symmetry metadata. Cheap to clone; logically
/// immutable; safe to share across threads.
#[derive(Clone)]
pub struct MomentFunctional {
    inner: Arc<Inner>,
}

impl MomentFunctional {
    fn from_kernel(kernel: Kernel, symmetry: Symmetry, description: String) -> Self {
        MomentFunctional {
            inner: Arc::new(Inner {
                kernel,
                symmetry,
                description,
                memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    /// Constant weight on `[-1,1]²`.
    pub fn square_legendre() -> Self {
        Self::from_kernel(
            Kernel::SquareLegendre,
            Symmetry::Xy,
            "square-legendre".to_string(),
        )
    }

    /// `(1-x²-y²)^mu` on the unit disk; requires `mu > -1`.
    pub fn ball(mu: Rational) -> Result<Self> {
        if mu <= rat_int(-1) {
            return Err(Error::InvalidParameter(format!(
                "ball exponent must exceed -1, got {}",
                rational_to_string(&mu)
            )));
        }
        let label = format!("ball(mu={})", rational_to_string(&mu));
        Ok(Self::from_kernel(Kernel::Ball { mu }, Symmetry::Xy, label))
    }

    /// `x^a y^b (1-x-y)^c` on the unit triangle; requires `a, b, c > -1`.
    pub fn simplex(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b), ("c", &c)] {
            if *v <= rat_int(-1) {
                return Err(Error::InvalidParameter(format!(
                    "simplex exponent {name} must exceed -1, got {}",
                    rational_to_string(v)
                )));
            }
        }
        let label = format!(
            "simplex(a={},b={},c={})",
            rational_to_string(&a),
            rational_to_string(&b),
            rational_to_string(&c)
        );
        Ok(Self::from_kernel(
            Kernel::Simplex { a, b, c },
            Symmetry::None,
            label,
        ))
    }

    /// Explicit moment table. The `(0,0)` entry must be present and positive;
    /// all entries are normalized by it.
    pub fn custom(
        entries: impl IntoIterator<Item = (u32, u32, Rational)>,
        symmetry: Symmetry,
        description: impl Into<String>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (h, k, v) in entries {
            if table.insert((h, k), v).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate moment entry ({h},{k})"
                )));
            }
        }
        let mass = table
            .get(&(0, 0))
            .cloned()
            .ok_or_else(|| Error::InvalidParameter("custom table lacks the (0,0) moment".into()))?;
        if !mass.is_positive() {
            return Err(Error::NonPositiveMass);
        }
        let table = table.into_iter().map(|(k, v)| (k, v / &mass)).collect();
        Ok(Self::from_kernel(
            Kernel::Custom { table },
            symmetry,
            description.into(),
        ))
    }

    pub fn symmetry(&self) -> Symmetry {
        self.inner.symmetry
    }

    pub fn description(&self) -> &str {
        &self.inner.description
    }

    /// The normalized moment `μ(h,k)/μ(0,0)`. Memoized.
    pub fn moment(&self, h: u32, k: u32) -> Result<Rational> {
        if let Some(v) = self.inner.memo.read().unwrap().get(&(h, k)) {
            return Ok(v.clone());
        }
        let v = self.compute_moment(h, k)?;
        self.inner.memo.write().unwrap().insert((h, k), v.clone());
        Ok(v)
    }

    fn compute_moment(&self, h: u32, k: u32) -> Result<Rational> {
        if self.inner.symmetry.forces_zero(h, k) {
            return Ok(Rational::zero());
        }
        match &self.inner.kernel {
            Kernel::SquareLegendre => {
                // Odd exponents were handled by the symmetry short-circuit.
                Ok(Rational::new(
                    1.into(),
                    ((h as i64 + 1) * (k as i64 + 1)).into(),
                ))
            }
            Kernel::Ball { mu } => Ok(ball_moment(mu, h / 2, k / 2)),
            Kernel::Simplex { a, b, c } => Ok(simplex_moment(a, b, c, h, k)),
            Kernel::Custom { table } => {
                table
                    .get(&(h, k))
                    .cloned()
                    .ok_or_else(|| Error::MomentUnavailable {
                        h,
                        k,
                        detail: format!(
                            "custom table `{}` has no such entry",
                            self.inner.description
                        ),
                    })
            }
            Kernel::Christoffel { parent, a, b, mass } => {
                let mut v = Rational::zero();
                if !a.is_zero() {
                    v += a * parent.moment(h + 1, k)?;
                }
                if !b.is_zero() {
                    v += b * parent.moment(h, k + 1)?;
                }
                Ok(v / mass)
            }
            Kernel::Pushforward { parent, tag, base } => {
                let v = parent.moment(2 * h + 2 * tag.i as u32, 2 * k + 2 * tag.j as u32)?;
                Ok(v / base)
            }
            Kernel::Pullback { parent } => {
                if !h.is_multiple_of(2) || !k.is_multiple_of(2) {
                    Ok(Rational::zero())
                } else {
                    parent.moment(h / 2, k / 2)
                }
            }
        }
    }

    /// Moments of `λ(x,y)·W` with `λ = a·x + b·y`, renormalized so its own
    /// `(0,0)` moment is 1. The mass `a·μ(1,0) + b·μ(0,1)` must be positive,
    /// otherwise `λ·W` is not a weight on the support.
    pub fn christoffel(&self, a: Rational, b: Rational) -> Result<MomentFunctional> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidParameter(
                "Christoffel factor must have |a| + |b| > 0".into(),
            ));
        }
        let mass = &a * self.moment(1, 0)? + &b * self.moment(0, 1)?;
        if !mass.is_positive() {
            return Err(Error::NonPositiveMass);
        }
        let label = format!(
            "christoffel(a={},b={}) of {}",
            rational_to_string(&a),
            rational_to_string(&b),
            self.inner.description
        );
        Ok(Self::from_kernel(
            Kernel::Christoffel {
                parent: self.clone(),
                a,
                b,
                mass,
            },
            Symmetry::None,
            label,
        ))
    }

    /// The normalized mass `a·μ(1,0) + b·μ(0,1)` of the Christoffel factor;
    /// connection-matrix formulas need it to undo the renormalization.
    pub fn christoffel_mass(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        Ok(a * self.moment(1, 0)? + b * self.moment(0, 1)?)
    }

    /// Moment functional of the small family `(i,j)` under `(x,y) ↦ (x²,y²)`:
    /// `μ^{(i,j)}(h,k) = μ(2h+2i, 2k+2j)/μ(2i, 2j)`. Requires an
    /// xy-symmetric parent.
    pub fn quad_pushforward(&self, tag: FamilyTag) -> Result<MomentFunctional> {
        if !self.inner.symmetry.is_xy() {
            return Err(Error::NotSymmetric(format!(
                "quadratic pushforward needs an xy-symmetric weight, `{}` is not",
                self.inner.description
            )));
        }
        let base = self.moment(2 * tag.i as u32, 2 * tag.j as u32)?;
        if !base.is_positive() {
            return Err(Error::NonPositiveMass);
        }
        let label = format!("pushforward{} of {}", tag.label(), self.inner.description);
        Ok(Self::from_kernel(
            Kernel::Pushforward {
                parent: self.clone(),
                tag,
                base,
            },
            Symmetry::None,
            label,
        ))
    }

    /// The xy-symmetric functional whose even moments are this one's:
    /// `μ(2h,2k) = G(h,k)`, odd moments zero.
    pub fn quad_pullback(&self) -> MomentFunctional {
        let label = format!("pullback of {}", self.inner.description);
        Self::from_kernel(
            Kernel::Pullback {
                parent: self.clone(),
            },
            Symmetry::Xy,
            label,
        )
    }

    /// Apply the functional to a polynomial.
    pub fn apply(&self, p: &BivariatePoly) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (&(i, j), c) in p.terms() {
            acc += c * self.moment(i, j)?;
        }
        Ok(acc)
    }

    /// `v(p·q)` without materializing the product.
    pub fn dot(&self, p: &BivariatePoly, q: &BivariatePoly) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (&(a, b), c1) in p.terms() {
            for (&(i, j), c2) in q.terms() {
                acc += c1 * c2 * self.moment(a + i, b + j)?;
            }
        }
        Ok(acc)
    }

    /// Gram matrix of two polynomial vectors: entry `(r, c)` is
    /// `v(a_r · b_c)`. Treating the vectors as `p×1` and `q×1` polynomial
    /// matrices, this is the functional acting on `A·Bᵀ`.
    pub fn gram(&self, a: &PolyVector, b: &PolyVector) -> Result<RatMatrix> {
        let mut m = RatMatrix::zeros(a.len(), b.len());
        for r in 0..a.len() {
            for c in 0..b.len() {
                m.set(r, c, self.dot(a.get(r), b.get(c))?);
            }
        }
        Ok(m)
    }
}

impl std::fmt::Debug for MomentFunctional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MomentFunctional({})", self.inner.description)
    }
}

/// Normalized even ball moment `μ(2a, 2b)/μ(0,0)` for weight
/// `(1-x²-y²)^mu`, via the polar-coordinate ratio recurrences
/// `μ(2a,2b)/μ(2a-2,2b) = (2a-1)/(2(a+b+mu+1))` and symmetrically in `b`.
fn ball_moment(mu: &Rational, a: u32, b: u32) -> Rational {
    let mut v = Rational::one();
    for t in 1..=a {
        let num = rat_int(2 * t as i64 - 1);
        let den = (rat_int(t as i64) + rat_int(1)) + mu;
        v *= num / (rat_int(2) * den);
    }
    for s in 1..=b {
        let num = rat_int(2 * s as i64 - 1);
        let den = (rat_int(a as i64 + s as i64) + rat_int(1)) + mu;
        v *= num / (rat_int(2) * den);
    }
    v
}

/// Normalized simplex moment for weight `x^a y^b (1-x-y)^c`, via the
/// Dirichlet-integral ratio recurrence
/// `μ(h,k)/μ(h-1,k) = (h+a)/(h+k+a+b+c+2)` and symmetrically in `k`.
fn simplex_moment(a: &Rational, b: &Rational, c: &Rational, h: u32, k: u32) -> Rational {
    let s = a + b + c;
    let mut v = Rational::one();
    for t in 1..=h {
        let num = rat_int(t as i64) + a;
        let den = rat_int(t as i64 + 2) + &s;
        v *= num / den;
    }
    for t in 1..=k {
        let num = rat_int(t as i64) + b;
        let den = rat_int(h as i64 + t as i64 + 2) + &s;
        v *= num / den;
    }
    v
}

/// Weight family selector as it appears in config files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightFamily {
    SquareLegendre,
    Ball,
    Simplex,
    Custom,
}

/// Declarative description of a weight, as ingested from the CLI config
/// file. Parameters are `"p/q"` strings; custom moment tables are arrays of
/// `[h, k, "p/q"]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub family: WeightFamily,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub moments: Option<Vec<(u32, u32, String)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symmetry: Option<Symmetry>,
}

impl WeightSpec {
    pub fn square_legendre() -> Self {
        WeightSpec {
            family: WeightFamily::SquareLegendre,
            mu: None,
            a: None,
            b: None,
            c: None,
            moments: None,
            symmetry: None,
        }
    }

    pub fn ball(mu: &Rational) -> Self {
        WeightSpec {
            mu: Some(rational_to_string(mu)),
            ..Self::square_legendre_family(WeightFamily::Ball)
        }
    }

    fn square_legendre_family(family: WeightFamily) -> Self {
        WeightSpec {
            family,
            ..Self::square_legendre()
        }
    }

    /// Materialize the moment functional, validating parameter constraints.
    pub fn build(&self) -> Result<MomentFunctional> {
        let get = |name: &str, v: &Option<String>| -> Result<Rational> {
            let s = v.as_ref().ok_or_else(|| {
                Error::InvalidParameter(format!("weight.{name} is required for this family"))
            })?;
            parse_rational(s)
        };
        match self.family {
            WeightFamily::SquareLegendre => Ok(MomentFunctional::square_legendre()),
            WeightFamily::Ball => MomentFunctional::ball(get("mu", &self.mu)?),
            WeightFamily::Simplex => MomentFunctional::simplex(
                get("a", &self.a)?,
                get("b", &self.b)?,
                get("c", &self.c)?,
            ),
            WeightFamily::Custom => {
                let raw = self.moments.as_ref().ok_or_else(|| {
                    Error::InvalidParameter("weight.moments is required for custom weights".into())
                })?;
                let mut entries = Vec::with_capacity(raw.len());
                for (h, k, s) in raw {
                    entries.push((*h, *k, parse_rational(s)?));
                }
                MomentFunctional::custom(
                    entries,
                    self.symmetry.unwrap_or_default(),
                    "custom".to_string(),
                )
            }
        }
    }
}

//! The scalar type of the crate and its `"p/q"` text form.
//!
//! Every scalar in the library is an arbitrary-precision rational, always
//! stored reduced with a positive denominator. Config and report files carry
//! rationals as the string `"p/q"` (or just `"p"` when the denominator is 1),
//! with an optional leading minus sign; floats never appear.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the `"p/q"` form accepted in config files.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse rational from {s:?}"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = num_str.parse().map_err(|_| bad())?;
    let denom: BigInt = den_str.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "zero denominator in {s:?}"
        )));
    }
    Ok(Rational::new(numer, denom))
}

/// True if `r` is strictly positive.
pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["3/4", "-3/4", "0", "17", "-2", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&r), s);
        }
    }

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("3/-4").unwrap(), rat(-3, 4));
        assert_eq!(rational_to_string(&parse_rational("3/-4").unwrap()), "-3/4");
        assert_eq!(parse_rational(" 1/2 ").unwrap(), rat(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a/b", "1.5", "1/2/3"] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }
}

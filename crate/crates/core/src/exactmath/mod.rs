//! Exact arithmetic: rationals, Gaussian rationals, multivariate polynomials
//! with parameter indeterminates, and fraction-free linear algebra.
//!
//! Nothing in this crate touches floating point.

mod gauss;
mod matrix;
mod poly;

pub use gauss::GaussRat;
pub use matrix::{member, nullspace, rank, PolyMatrix, RatMatrix, Span};
pub use poly::{Exponent, MPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Parameter values used when a question about a parametric object has to be
/// answered numerically.
pub const DEFAULT_SAMPLES: [(i64, i64); 5] = [(0, 1), (1, 1), (-1, 1), (2, 1), (7, 1)];

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn default_samples() -> Vec<Rat> {
    DEFAULT_SAMPLES.iter().map(|&(n, d)| rat(n, d)).collect()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// `p/q` or `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_text_roundtrip() {
        for s in ["0", "3", "-7/4", "12/5"] {
            assert_eq!(fmt_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }
}

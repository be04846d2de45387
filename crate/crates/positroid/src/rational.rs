//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or an integer string.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    t.parse::<Q>()
        .map_err(|_| Error::Malformed(format!("not a rational: {t:?}")))
}

/// Canonical text form: `p/q`, or `p` when the denominator is one.
pub fn fmt_q(v: &Q) -> String {
    v.to_string()
}

/// Integer power, negative exponents allowed for nonzero bases.
pub fn pow(base: &Q, e: i64) -> Q {
    if e == 0 {
        return Q::one();
    }
    let mut acc = Q::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn is_zero(v: &Q) -> bool {
    v.is_zero()
}

//! Exact integer and rational primitives.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! canonical form (positive denominator, coprime parts, zero as `0/1`). This
//! module adds the checked operations, the `p/q` text form, and the factorial and
//! binomial helpers used throughout the crate.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Builds `p/q` in canonical form.
pub fn rational(p: i64, q: i64) -> Result<Rational> {
    if q == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(p.into(), q.into()))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// `a^e` for any integer exponent. A negative exponent on zero is an error.
pub fn pow_int(a: &Rational, e: i32) -> Result<Rational> {
    if e < 0 && a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(num_traits::Pow::pow(a, e))
}

/// Serializes as `p/q`, always with the denominator (`36/1`, `-1/36`, `0/1`).
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`. The result is canonicalized.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(p, q))
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Serde adapter for the `p/q` string form.
pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational};
    use crate::Rational;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

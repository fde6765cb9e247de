//! Exact rationals and the `"p/q"` string encoding used in every JSON document.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn floor_i64(r: &Rational) -> i64 {
    r.floor()
        .to_integer()
        .to_i64()
        .expect("exponent out of range")
}

pub fn ceil_i64(r: &Rational) -> i64 {
    r.ceil()
        .to_integer()
        .to_i64()
        .expect("exponent out of range")
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Denominator as `u64` (grid arithmetic never needs more).
pub fn denom_u64(r: &Rational) -> u64 {
    r.denom()
        .to_u64()
        .expect("denominator too large for a grid")
}

/// `r * d` as an integer, panicking if not integral.
pub fn scaled_index(r: &Rational, d: u64) -> i64 {
    let x = r * int(d as i64);
    assert!(is_integer(&x), "{r} is not on the 1/{d} grid");
    x.to_integer().to_i64().expect("index out of range")
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Least common multiple of denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Serde helper: a rational as its `"n/d"` string.
pub fn ser_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

pub fn ser_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rational))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-3/5", "1322/5", "-191600/693"] {
            assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/10").unwrap(), rat(3, 5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}

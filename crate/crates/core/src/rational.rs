//! Exact rationals rendered as `p/q` (or `p` when integral).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serializer;

use crate::error::{Error, Result};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn format(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(n, d))
}

pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format(r))
}

pub fn serialize_vec<S: Serializer>(
    v: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for (text, value) in [("-5/6", q(-5, 6)), ("3", int(3)), ("2/4", q(1, 2))] {
            assert_eq!(parse(text).unwrap(), value);
        }
        assert_eq!(format(&q(-10, 12)), "-5/6");
        assert_eq!(format(&q(8, 4)), "2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}

//! Exact rationals.
//!
//! [`Rational`] is `num`'s arbitrary precision `BigRational`, which is kept in
//! lowest terms with a positive denominator. Text form is `p/q`, or `p` when
//! the denominator is one.

use num::{BigInt, BigRational, Zero};
use std::str::FromStr;

use crate::error::{structural, Result};

pub type Rational = BigRational;

/// `n/d` in lowest terms. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_u64(n: u64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse(text: &str) -> Result<Rational> {
    let t = text.trim();
    if let Some((_, d)) = t.split_once('/') {
        if BigInt::from_str(d.trim())
            .map(|d| d.is_zero())
            .unwrap_or(false)
        {
            return Err(structural(format!("zero denominator in `{text}`")));
        }
    }
    Rational::from_str(t).map_err(|e| structural(format!("bad rational `{text}`: {e}")))
}

/// Serde adapter storing a rational as its `p/q` string.
pub mod as_string {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod vec_as_string {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| super::parse(t).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod opt_as_string {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(|r| r.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| super::parse(&t).map_err(D::Error::custom))
            .transpose()
    }
}

//! Exact rational scalars.
//!
//! Every computation in the crate runs over [`Rational`], an arbitrary
//! precision fraction kept in lowest terms with a positive denominator, so
//! that equality is structural. Values are written as `"p/q"` (or `"p"` when
//! the denominator is one) and never as decimals.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serializer};

pub type Rational = num_rational::BigRational;

/// `numer / denom` as a normalized rational. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_bigint(value: BigInt) -> Rational {
    Rational::from_integer(value)
}

/// Parses `"p/q"`, `"p"`, or `"-p/q"`. Whitespace around the tokens is ignored.
pub fn parse(text: &str) -> Result<Rational, String> {
    let trimmed = text.trim();
    let value = match trimmed.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator in {text:?}: {e}"))?;
            let den = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator in {text:?}: {e}"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in {text:?}"));
            }
            Rational::new(num, den)
        }
        None => {
            let num = BigInt::from_str(trimmed).map_err(|e| format!("bad rational {text:?}: {e}"))?;
            Rational::from_integer(num)
        }
    };
    Ok(value)
}

/// Renders as `"p/q"` or `"p"`.
pub fn format(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(-1)^exponent` for any integer exponent.
pub fn sign(exponent: i64) -> i64 {
    if exponent.is_even() {
        1
    } else {
        -1
    }
}

/// Serde adapter: `#[serde(with = "crate::rational::serde_str")]`.
pub mod serde_str {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse(&text).map_err(de::Error::custom)
    }
}

//! Exact rational helpers shared by the builders and the bridge.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used for every representation value.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {0:?}: expected an integer or \"p/q\"")]
pub struct ParseRationalError(pub String);

/// Parses `"p"` or `"p/q"` (optional leading sign, q nonzero).
pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` text; integers print without a denominator.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Least nonnegative residue of `value` modulo a positive `modulus`.
pub fn modulo(value: &Rational, modulus: &Rational) -> Rational {
    debug_assert!(modulus.is_positive());
    let quotient = (value / modulus).floor();
    value - modulus * quotient
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Exact binary value of a finite float.
pub fn from_f64(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

/// Integer part of a nonnegative rational that is known to be integral.
pub fn as_integer(value: &Rational) -> Option<BigInt> {
    value.is_integer().then(|| value.to_integer())
}

pub fn is_zero(value: &Rational) -> bool {
    value.is_zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `k·j/n` for tick arithmetic.
pub fn tick_value(modulus: &Rational, tick: u64, ticks: u64) -> Rational {
    let (q, r) = tick.div_rem(&ticks);
    debug_assert_eq!(q, 0);
    modulus * Rational::new(BigInt::from(r), BigInt::from(ticks))
}

/// Display adapter for rationals inside error messages.
pub struct Shown<'a>(pub &'a Rational);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format(self.0))
    }
}

/// Serde adapter: rationals travel as `"p/q"` strings.
pub mod as_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(de)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}

//! Exact rational scalars.
//!
//! [`Rational`] is a big-integer fraction kept in lowest terms with a
//! positive denominator. The textual form is `p/q` (or just `p` when the
//! denominator is one), never a decimal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use super::ExactError;

pub type Rational = BigRational;

/// `num / den` reduced to lowest terms. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `10^-places` as an exact rational, e.g. the default refinement tolerance.
pub fn pow10_neg(places: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), places as usize))
}

/// Parses `p/q`, `p`, or `-p/q`. Decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::Parse(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Only reachable for magnitudes outside the f64 range.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Decimal string with exactly `places` digits after the point, rounding
/// half away from zero. Exact: no floating-point step is involved.
pub fn round_decimal(r: &Rational, places: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), places as usize);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = scaled - Rational::from_integer(floor.clone());
    let rounded = if frac >= rat(1, 2) { floor + 1 } else { floor };
    let (whole, rem) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !(whole.is_zero() && rem.is_zero()) {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", rem.to_string(), width = places as usize)
    }
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    parse_rational(&s).map_err(serde::de::Error::custom)
}

/// Serde adapter for `Vec<Rational>` as a list of `p/q` strings.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactalg::{Polynomial, Rational};

/// Face counts `(f_-1, f_0, ..., f_{d-1})` of a `(d-1)`-dimensional complex.
///
/// Storage slot `k` holds the count of `(k-1)`-dimensional faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector {
    entries: Vec<BigInt>,
}

impl FVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        assert!(!entries.is_empty(), "an f-vector has at least the empty-face entry");
        FVector { entries }
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Rounds back from rationals; every entry must be a nonnegative integer.
    pub fn from_rationals(entries: &[Rational]) -> Option<Self> {
        entries
            .iter()
            .map(|r| (r.is_integer() && !r.is_negative()).then(|| r.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    /// Dimension parameter: the complex has dimension `d - 1`.
    pub fn d(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Number of `i`-dimensional faces, `i >= -1`.
    pub fn get(&self, i: isize) -> &BigInt {
        &self.entries[(i + 1) as usize]
    }

    pub fn as_rationals(&self) -> Vec<Rational> {
        self.entries.iter().cloned().map(Rational::from_integer).collect()
    }

    /// `f(t) = sum_j f_{j-1} t^{d-j}`: the empty face is the leading term.
    pub fn f_polynomial(&self) -> Polynomial {
        Polynomial::new(self.as_rationals().into_iter().rev().collect())
    }

    /// `t^d f(1/t) = sum_k f_{k-1} t^k`.
    pub fn q_polynomial(&self) -> Polynomial {
        Polynomial::new(self.as_rationals())
    }

    pub fn has_empty_face(&self) -> bool {
        self.entries[0].is_one()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for FVector {
    /// JSON array of integers, exact at any size.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for e in &self.entries {
            match e.to_u64() {
                Some(small) => seq.serialize_element(&small)?,
                None => {
                    let n = serde_json::Number::from_str(&e.to_string())
                        .map_err(serde::ser::Error::custom)?;
                    seq.serialize_element(&n)?
                }
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for FVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<serde_json::Number>::deserialize(d)?;
        let entries = raw
            .iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        if entries.is_empty() {
            return Err(serde::de::Error::custom("empty f-vector"));
        }
        Ok(FVector::new(entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    #[test]
    fn polynomial_forms() {
        let f = FVector::from_ints(&[1, 2, 1]);
        assert_eq!(f.d(), 2);
        assert_eq!(f.get(0), &BigInt::from(2));
        assert_eq!(f.f_polynomial(), Polynomial::from_ints(&[1, 2, 1]));
        let f = FVector::from_ints(&[1, 3, 2]);
        assert_eq!(f.f_polynomial(), Polynomial::from_ints(&[2, 3, 1]));
        assert_eq!(f.q_polynomial(), Polynomial::from_ints(&[1, 3, 2]));
    }

    #[test]
    fn json_exact_for_large_entries() {
        let big: BigInt = BigInt::from(10).pow(30) + 7;
        let f = FVector::new(vec![BigInt::one(), big.clone()]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, format!("[1,{big}]"));
        let back: FVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn from_rationals_requires_integers() {
        assert!(FVector::from_rationals(&[int(1), crate::exactalg::rational::rat(1, 2)]).is_none());
        assert_eq!(FVector::from_rationals(&[int(1), int(4)]), Some(FVector::from_ints(&[1, 4])));
    }
}

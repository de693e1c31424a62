//! JSON encoding of big integers: a plain number when it fits in 64 bits,
//! otherwise a decimal string. Both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigIntJson(pub BigInt);

impl Serialize for BigIntJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        bigint::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for BigIntJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        bigint::deserialize(d).map(BigIntJson)
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&n.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        d.deserialize_any(BigIntVisitor)
    }
}

/// A pair of big integers as a two-element array.
pub mod pair {
    use super::*;

    pub fn serialize<S: Serializer>((a, b): &(BigInt, BigInt), s: S) -> Result<S::Ok, S::Error> {
        [BigIntJson(a.clone()), BigIntJson(b.clone())].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(BigInt, BigInt), D::Error> {
        let [a, b] = <[BigIntJson; 2]>::deserialize(d)?;
        Ok((a.0, b.0))
    }
}

/// Nested rows of big integers.
pub mod rows {
    use super::*;

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let wrapped: Vec<Vec<BigIntJson>> =
            rows.iter().map(|r| r.iter().cloned().map(BigIntJson).collect()).collect();
        wrapped.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let wrapped = Vec::<Vec<BigIntJson>>::deserialize(d)?;
        Ok(wrapped.into_iter().map(|r| r.into_iter().map(|b| b.0).collect()).collect())
    }
}

struct BigIntVisitor;

impl<'de> Visitor<'de> for BigIntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(v.into())
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(v.into())
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.trim().parse().map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_values_become_strings() {
        let big = BigInt::from(7).pow(40);
        let v = serde_json::to_value(BigIntJson(big.clone())).unwrap();
        assert!(v.is_string());
        let back: BigIntJson = serde_json::from_value(v).unwrap();
        assert_eq!(back.0, big);
        let small: BigIntJson = serde_json::from_str("-12").unwrap();
        assert_eq!(small.0, BigInt::from(-12));
        assert!(serde_json::from_str::<BigIntJson>("1.5").is_err());
    }
}

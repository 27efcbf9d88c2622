//! JSON encodings for exact integers, rationals and matrices.
//!
//! Integers are emitted as JSON numbers while they are exactly representable
//! as IEEE doubles (|x| ≤ 2⁵³) and as decimal strings beyond that. Both forms
//! are accepted on input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::IntMatrix;
use crate::error::{Error, Result};

const EXACT_DOUBLE: i64 = 1 << 53;

pub fn int_to_json(x: &BigInt) -> Value {
    if x.abs() <= BigInt::from(EXACT_DOUBLE) {
        let v: i64 = x.try_into().expect("bounded by 2^53");
        Value::from(v)
    } else {
        Value::String(x.to_string())
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(i.into())
            } else if let Some(u) = n.as_u64() {
                Ok(u.into())
            } else {
                Err(Error::Parse(format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("{s:?} is not a decimal integer"))),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

/// Canonical `p/q` text (lowest terms, positive denominator; integers print bare).
pub fn rational_to_string(x: &BigRational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("{s:?} is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        other => Ok(BigRational::from_integer(int_from_json(other)?)),
    }
}

pub fn rational_to_json(x: &BigRational) -> Value {
    Value::String(rational_to_string(x))
}

pub fn int_vec_from_json(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of integers".into()))?
        .iter()
        .map(int_from_json)
        .collect()
}

pub fn rows_from_json(v: &Value) -> Result<Vec<Vec<BigInt>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of rows".into()))?
        .iter()
        .map(int_vec_from_json)
        .collect()
}

impl IntMatrix {
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows())
            .map(|i| Value::Array(self.row(i).iter().map(int_to_json).collect()))
            .collect();
        serde_json::json!({ "rows": self.rows(), "cols": self.cols(), "entries": entries })
    }

    /// Accepts `{"rows","cols","entries"}`; `rows`/`cols` are optional but
    /// checked when present.
    pub fn from_json(v: &Value) -> Result<IntMatrix> {
        let entries = v
            .get("entries")
            .ok_or_else(|| Error::Parse("matrix object needs an \"entries\" field".into()))?;
        let rows = rows_from_json(entries)?;
        let m = IntMatrix::from_rows(&rows)?;
        let declared = |key: &str| v.get(key).and_then(Value::as_u64).map(|x| x as usize);
        if declared("rows").is_some_and(|r| r != m.rows())
            || (m.rows() > 0 && declared("cols").is_some_and(|c| c != m.cols()))
        {
            return Err(Error::Parse("declared dimensions disagree with entries".into()));
        }
        Ok(m)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        IntMatrix::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_entries_become_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let m = IntMatrix::from_rows(&[vec![BigInt::from(3), big.clone()]]).unwrap();
        let j = m.to_json();
        assert_eq!(j["entries"][0][0], Value::from(3));
        assert_eq!(j["entries"][0][1], Value::String(big.to_string()));
        assert_eq!(IntMatrix::from_json(&j).unwrap(), m);
    }

    #[test]
    fn mixed_number_and_string_input() {
        let v: Value = serde_json::from_str(r#"{"rows":2,"cols":2,"entries":[[1,"-2"],[3,4]]}"#).unwrap();
        let m = IntMatrix::from_json(&v).unwrap();
        assert_eq!(m[(0, 1)], BigInt::from(-2));
    }

    #[test]
    fn dimension_disagreement_rejected() {
        let v: Value = serde_json::from_str(r#"{"rows":3,"cols":2,"entries":[[1,2],[3,4]]}"#).unwrap();
        assert!(IntMatrix::from_json(&v).is_err());
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("-745/24").unwrap(), BigRational::new((-745).into(), 24.into()));
        assert_eq!(parse_rational("6/4").unwrap().to_string(), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}

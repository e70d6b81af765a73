//! JSON encodings shared by the report types and the command line.
//!
//! Rationals are written as `{"num": "<int>", "den": "<int>"}` with string
//! integers so arbitrary precision survives any JSON parser.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::{Matrix, Rational};

#[derive(Serialize, Deserialize)]
struct Repr {
    num: String,
    den: String,
}

/// Serializes a rational as `{"num", "den"}`.
pub struct JsonRational<'a>(pub &'a Rational);

impl Serialize for JsonRational<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Repr { num: self.0.numer().to_string(), den: self.0.denom().to_string() }.serialize(s)
    }
}

/// Owned counterpart of [`JsonRational`] that also deserializes.
#[derive(Debug, Clone, PartialEq)]
pub struct OwnedJsonRational(pub Rational);

impl Serialize for OwnedJsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonRational(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for OwnedJsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = Repr::deserialize(d)?;
        let num = BigInt::from_str(&repr.num).map_err(D::Error::custom)?;
        let den = BigInt::from_str(&repr.den).map_err(D::Error::custom)?;
        if den == BigInt::from(0) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(OwnedJsonRational(Rational::new(num, den)))
    }
}

/// Serializes a rational matrix as nested arrays of rationals.
pub struct JsonRationalMatrix<'a>(pub &'a Matrix<Rational>);

impl Serialize for JsonRationalMatrix<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m = self.0;
        let mut outer = s.serialize_seq(Some(m.rows()))?;
        for i in 0..m.rows() {
            let row: Vec<JsonRational> = m.row(i).iter().map(JsonRational).collect();
            outer.serialize_element(&row)?;
        }
        outer.end()
    }
}

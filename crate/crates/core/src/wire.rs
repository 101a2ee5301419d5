//! Serde adapters for exact numbers. Integers that stand for degrees are
//! written as strings and read from either strings or JSON numbers;
//! rationals are always strings.

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{format_rational, parse_rational, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum IntLike {
    Int(i64),
    Text(String),
}

impl IntLike {
    fn into_i64<E: de::Error>(self) -> Result<i64, E> {
        match self {
            IntLike::Int(v) => Ok(v),
            IntLike::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| E::custom(format!("expected an integer, got {s:?}"))),
        }
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &i64, s: S) -> Result<S::Ok, S::Error> {
        v.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i64, D::Error> {
        IntLike::deserialize(d)?.into_i64()
    }
}

pub mod opt_int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<i64>, s: S) -> Result<S::Ok, S::Error> {
        v.map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<i64>, D::Error> {
        Option::<IntLike>::deserialize(d)?
            .map(IntLike::into_i64)
            .transpose()
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        format_rational(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match IntLike::deserialize(d)? {
            IntLike::Int(v) => Ok(crate::algebra::rational::int(v)),
            IntLike::Text(s) => parse_rational(&s).map_err(de::Error::custom),
        }
    }
}

//! JSON-facing helpers. Exact quantities always travel as strings
//! (`"83/84"`, `"-2"`) so no float ever touches them.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{GeneralizedProfile, Profile, ProfileError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid exact rational {text:?}: {reason}")]
pub struct RationalParseError {
    pub text: String,
    pub reason: &'static str,
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.25"` into an exact
/// rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let err = |reason| RationalParseError {
        text: text.to_owned(),
        reason,
    };
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| err("bad numerator"))?;
        let den = BigInt::from_str(den.trim()).map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let (negative, int) = match int.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int.strip_prefix('+').unwrap_or(int)),
        };
        let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if (int.is_empty() && frac.is_empty()) || !digits_ok(int) || !digits_ok(frac) {
            return Err(err("bad decimal"));
        }
        let joined = format!("{int}{frac}");
        let mut num = BigInt::from_str(if joined.is_empty() { "0" } else { &joined })
            .map_err(|_| err("bad decimal"))?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(BigRational::new(num, den));
    }
    let num = BigInt::from_str(s).map_err(|_| err("bad integer"))?;
    Ok(BigRational::from_integer(num))
}

pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}

pub mod rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

pub mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&format_rational(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|text| parse_rational(&text).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub mod rational_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|text| parse_rational(text).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod bigint {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        BigInt::from_str(&text).map_err(serde::de::Error::custom)
    }
}

pub mod biguint {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::from_str(&text).map_err(serde::de::Error::custom)
    }
}

pub mod biguint_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|text| BigUint::from_str(text).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct ProfileRepr {
    a: Vec<u32>,
    m: Vec<u32>,
    #[serde(with = "rational_vec")]
    c: Vec<BigRational>,
}

impl TryFrom<ProfileRepr> for Profile {
    type Error = ProfileError;

    fn try_from(repr: ProfileRepr) -> Result<Self, Self::Error> {
        Profile::new(repr.a, repr.m, repr.c)
    }
}

impl From<Profile> for ProfileRepr {
    fn from(p: Profile) -> Self {
        ProfileRepr {
            a: p.a().to_vec(),
            m: p.m().to_vec(),
            c: p.c().to_vec(),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct GeneralizedRepr {
    #[serde(with = "rational_vec")]
    d: Vec<BigRational>,
    m: Vec<u32>,
}

impl TryFrom<GeneralizedRepr> for GeneralizedProfile {
    type Error = ProfileError;

    fn try_from(repr: GeneralizedRepr) -> Result<Self, Self::Error> {
        GeneralizedProfile::new(repr.d, repr.m)
    }
}

impl From<GeneralizedProfile> for GeneralizedRepr {
    fn from(gp: GeneralizedProfile) -> Self {
        GeneralizedRepr {
            d: gp.d().to_vec(),
            m: gp.m().to_vec(),
        }
    }
}

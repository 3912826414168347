//! Decimal-string encoding for [`Natural`] values.
//!
//! Big integers always cross a serialization boundary as canonical decimal
//! strings: ASCII digits only, no sign, no leading zeros (except `"0"`).

use num_traits::Num;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

use crate::{Error, Natural, Result};

pub fn parse_decimal(s: &str) -> Result<Natural> {
    let canonical = !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit())
        && (s == "0" || !s.starts_with('0'));
    if !canonical {
        return Err(Error::Transcript(format!("`{s}` is not a canonical decimal")));
    }
    Natural::from_str_radix(s, 10).map_err(|e| Error::Transcript(e.to_string()))
}

pub mod dec {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Natural, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Natural, D::Error> {
        let s = String::deserialize(d)?;
        parse_decimal(&s).map_err(D::Error::custom)
    }
}

pub mod dec_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Natural], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for n in v {
            seq.serialize_element(&n.to_str_radix(10))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Natural>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_decimal(s).map_err(D::Error::custom))
            .collect()
    }
}

pub mod dec_opt {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Option<Natural>, s: S) -> Result<S::Ok, S::Error> {
        match n {
            Some(n) => s.serialize_some(&n.to_str_radix(10)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Natural>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_decimal(&s).map_err(D::Error::custom))
            .transpose()
    }
}

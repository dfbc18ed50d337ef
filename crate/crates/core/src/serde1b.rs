//! Serde helpers converting between 0-based in-memory indices and the
//! 1-based convention used in all serialized reports.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

pub(crate) fn ser_index<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(*v as u64 + 1)
}

pub(crate) fn de_index<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
    let v = u64::deserialize(d)?;
    if v == 0 {
        return Err(D::Error::custom("indices are 1-based; got 0"));
    }
    Ok((v - 1) as usize)
}

pub(crate) fn ser_opt_pair<S: Serializer>(
    v: &Option<(usize, usize)>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some((i, j)) => s.serialize_some(&(*i as u64 + 1, *j as u64 + 1)),
        None => s.serialize_none(),
    }
}

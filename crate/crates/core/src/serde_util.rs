//! Serialize 0-based vertex indices as 1-based labels.

use serde::ser::SerializeSeq;
use serde::Serializer;

pub(crate) fn one_based<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(*v as u64 + 1)
}

pub(crate) fn one_based_vec<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&(*x as u64 + 1))?;
    }
    seq.end()
}

use alloc::vec::Vec;
use core::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A strictly ascending, duplicate-free set of 0-based row/column indices.
///
/// Inputs are normalized (sorted, deduplicated) on construction, so callers
/// may pass indices in any order. Serialized form is a 1-based array.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    /// Normalizes `indices` and validates them against a matrix order `n`.
    pub fn new(indices: impl Into<Vec<usize>>, n: usize) -> Result<Self> {
        let mut indices = indices.into();
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidIndex {
                index: bad,
                order: n,
            });
        }
        Ok(IndexSet { indices })
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        IndexSet {
            indices: (0..n).collect(),
        }
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet {
            indices: alloc::vec![i],
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    /// Complement within `{0, .., n-1}`.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet {
            indices: (0..n).filter(|i| !self.contains(*i)).collect(),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.indices.len()))?;
        for i in &self.indices {
            seq.serialize_element(&(*i as u64 + 1))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let one_based = Vec::<u64>::deserialize(deserializer)?;
        let mut indices = Vec::with_capacity(one_based.len());
        for v in one_based {
            if v == 0 {
                return Err(D::Error::custom("indices are 1-based; got 0"));
            }
            indices.push((v - 1) as usize);
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(IndexSet { indices })
    }
}

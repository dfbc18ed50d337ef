#![no_std]
#![forbid(unsafe_code)]

//! Exact machinery for analyzing M-matrices and the band structure of their
//! inverses: dense rational linear algebra, the digraph of a matrix, signed
//! path-sum inverse entries, band condition checks, and randomized or
//! exhaustive searches over banded M-matrix families.
//!
//! All arithmetic is exact over arbitrary-precision rationals; floating point
//! never enters a computation. Rust APIs are 0-indexed throughout; serialized
//! reports and `Display` output are 1-indexed, matching the usual `a_ij`
//! notation of the literature.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod banded;
pub mod digraph;
pub mod error;
pub mod matcore;
pub mod maybee;
pub mod mclass;
pub mod search;

mod serde1b;

pub use error::{Error, Result};
pub use matcore::{IndexSet, Rational, RationalMatrix};

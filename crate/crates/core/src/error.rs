//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors produced anywhere in the crate.
///
/// Index-bearing variants store 0-based indices; `Display` renders them
/// 1-based like every other user-facing report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An index lies outside `0..order`.
    InvalidIndex { index: usize, order: usize },
    /// An operation required equally many rows and columns.
    ShapeMismatch { rows: usize, cols: usize },
    /// An index set that must be nonempty was empty.
    EmptyIndexSet,
    /// The complement of an index set was empty where a submatrix was needed.
    EmptyComplement,
    /// Division by an exactly-zero rational.
    DivisionByZero,
    /// A string did not parse as an exact rational.
    ParseRational { input: String, reason: &'static str },
    /// The matrix is singular.
    Singular,
    /// The order exceeds a hard cap of an exhaustive procedure.
    SizeLimit { order: usize, max: usize },
    /// The order is below the definitional minimum of a banded check.
    SizeTooSmall { order: usize, min: usize },
    /// The operation requires a Z-matrix.
    NotZMatrix,
    /// The operation requires an M-matrix.
    NotMMatrix,
    /// The operation requires a tridiagonal matrix.
    NotTridiagonal,
    /// A vertex sequence is not a path of the digraph in question.
    InvalidPath { from: usize, to: usize },
    /// Simple-path enumeration exceeded the configured cap.
    PathExplosion { cap: usize },
    /// Two routes that must agree exactly disagreed. Always a bug, never an
    /// expected outcome.
    InternalInconsistency(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidIndex { index, order } => {
                write!(f, "index {} out of range for order {}", index + 1, order)
            }
            Error::ShapeMismatch { rows, cols } => {
                write!(f, "expected a square selection, got {rows}x{cols}")
            }
            Error::EmptyIndexSet => write!(f, "index set must be nonempty"),
            Error::EmptyComplement => write!(f, "complement index set is empty"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ParseRational { input, reason } => {
                write!(f, "cannot parse {input:?} as a rational: {reason}")
            }
            Error::Singular => write!(f, "matrix is singular"),
            Error::SizeLimit { order, max } => {
                write!(f, "order {order} exceeds the cap of {max}")
            }
            Error::SizeTooSmall { order, min } => {
                write!(f, "order {order} is below the minimum of {min}")
            }
            Error::NotZMatrix => write!(f, "matrix is not a Z-matrix"),
            Error::NotMMatrix => write!(f, "matrix is not an M-matrix"),
            Error::NotTridiagonal => write!(f, "matrix is not tridiagonal"),
            Error::InvalidPath { from, to } => {
                write!(f, "no edge from v{} to v{}", from + 1, to + 1)
            }
            Error::PathExplosion { cap } => {
                write!(f, "simple-path enumeration exceeded the cap of {cap}")
            }
            Error::InternalInconsistency(msg) => {
                write!(f, "internal inconsistency: {msg}")
            }
        }
    }
}

impl core::error::Error for Error {}

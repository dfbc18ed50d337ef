//! Exact dense linear algebra over arbitrary-precision rationals: scalars,
//! square matrices, submatrix selection, fraction-free determinants,
//! Gauss-Jordan inverses, and band-width measurement.

mod index_set;
mod matrix;
mod rational;

pub use index_set::IndexSet;
pub use matrix::RationalMatrix;
pub use rational::Rational;

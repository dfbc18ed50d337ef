use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{IndexSet, Rational};
use crate::error::{Error, Result};

/// Dense square matrix of exact rationals, row-major, immutable after
/// construction.
///
/// The Rust API is 0-indexed; serialized output renders entries as exact
/// `"p/q"` strings.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    /// Builds an `n x n` matrix from `n^2` row-major entries.
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch {
                rows: n,
                cols: if n == 0 { 0 } else { entries.len() / n },
            });
        }
        Ok(RationalMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        RationalMatrix { n, entries }
    }

    pub fn from_rows<const N: usize>(rows: [[i64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| Rational::from_integer(rows[i][j]))
    }

    /// Parses a rectangular array of `"p/q"`/decimal/integer literals.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::ShapeMismatch {
                    rows: n,
                    cols: row.len(),
                });
            }
            for s in *row {
                entries.push(s.parse()?);
            }
        }
        Ok(RationalMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry `a_ij` (0-indexed). Panics on out-of-range indices.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.n && j < self.n, "matrix index out of range");
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        assert!(i < self.n, "row index out of range");
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul_mat(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch {
                rows: self.n,
                cols: other.n,
            });
        }
        Ok(Self::from_fn(self.n, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.n {
                acc += &(self.get(i, k) * other.get(k, j));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.n {
            return Err(Error::ShapeMismatch {
                rows: self.n,
                cols: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| {
                let mut acc = Rational::zero();
                for k in 0..self.n {
                    acc += &(self.get(i, k) * &x[k]);
                }
                acc
            })
            .collect())
    }

    /// The submatrix on the given row and column sets, indices taken in
    /// ascending order. Both sets must be nonempty and of equal size (this
    /// type only holds square matrices; every caller in this crate selects
    /// square blocks).
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if rows.len() != cols.len() {
            return Err(Error::ShapeMismatch {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        for i in rows.iter().chain(cols.iter()) {
            if i >= self.n {
                return Err(Error::InvalidIndex {
                    index: i,
                    order: self.n,
                });
            }
        }
        let k = rows.len();
        let row_idx: Vec<usize> = rows.iter().collect();
        let col_idx: Vec<usize> = cols.iter().collect();
        Ok(Self::from_fn(k, |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        }))
    }

    /// Principal submatrix `A[alpha]`.
    pub fn principal(&self, alpha: &IndexSet) -> Result<Self> {
        self.submatrix(alpha, alpha)
    }

    /// Principal submatrix on the complement, `A(alpha) = A[alpha^c]`.
    ///
    /// An empty complement is signalled as [`Error::EmptyComplement`] so
    /// determinant callers can substitute the `det = 1` convention.
    pub fn principal_complement(&self, alpha: &IndexSet) -> Result<Self> {
        for i in alpha.iter() {
            if i >= self.n {
                return Err(Error::InvalidIndex {
                    index: i,
                    order: self.n,
                });
            }
        }
        let comp = alpha.complement(self.n);
        if comp.is_empty() {
            return Err(Error::EmptyComplement);
        }
        self.principal(&comp)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination; rows are
    /// first scaled to integers, so all intermediate divisions are exact
    /// integer divisions. The empty matrix has determinant 1.
    pub fn determinant(&self) -> Rational {
        let n = self.n;
        if n == 0 {
            return Rational::one();
        }
        // Scale each row by the lcm of its denominators.
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for e in self.row(i) {
                lcm = lcm.lcm(e.denom());
            }
            m.push(
                self.row(i)
                    .iter()
                    .map(|e| e.numer() * (&lcm / e.denom()))
                    .collect(),
            );
            scale *= &lcm;
        }
        let mut negated = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negated = !negated;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let mut det = m[n - 1][n - 1].clone();
        if negated {
            det = -det;
        }
        Rational::from_bigints(det, scale).expect("row scales are nonzero")
    }

    /// Exact inverse by Gauss-Jordan elimination on rationals.
    pub fn inverse_direct(&self) -> Result<Self> {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                    inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                }
            }
        }
        let entries = inv.into_iter().flatten().collect();
        Ok(RationalMatrix { n, entries })
    }

    /// `(lower, upper)` band widths: the largest `i - j` (resp. `j - i`)
    /// with a nonzero entry below (resp. above) the diagonal, 0 if none.
    pub fn bandwidth(&self) -> (usize, usize) {
        let mut lower = 0;
        let mut upper = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j).is_zero() {
                    if i > j {
                        lower = lower.max(i - j);
                    } else {
                        upper = upper.max(j - i);
                    }
                }
            }
        }
        (lower, upper)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| alloc::format!("{e}")).collect();
        let mut widths = vec![0usize; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                widths[j] = widths[j].max(cells[i * self.n + j].len());
            }
        }
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>w$}", cells[i * self.n + j], w = widths[j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix(n={})", self.n)?;
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct RawMatrixRef<'a> {
    n: usize,
    entries: Vec<&'a [Rational]>,
}

#[derive(Deserialize)]
struct RawMatrix {
    n: usize,
    entries: Vec<Vec<Rational>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        RawMatrixRef {
            n: self.n,
            entries: (0..self.n).map(|i| self.row(i)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawMatrix::deserialize(deserializer)?;
        let mut entries = Vec::with_capacity(raw.n * raw.n);
        for row in &raw.entries {
            if raw.entries.len() != raw.n || row.len() != raw.n {
                return Err(D::Error::custom("matrix entries must be n rows of n"));
            }
            entries.extend(row.iter().cloned());
        }
        RationalMatrix::new(raw.n, entries).map_err(D::Error::custom)
    }
}

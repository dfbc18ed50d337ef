//! Inverse entries as signed sums over simple paths of D(A).
//!
//! For nonsingular `A` with inverse `(t_ij)`:
//!
//! ```text
//! t_ii = det A(i) / det A
//! t_ij = (1/det A) * sum over all simple paths p: i -> j of
//!        (-1)^l(p) * A[p] * det A[V(p)]        (i != j)
//! ```
//!
//! where `A[p]` is the product of the matrix entries along `p` and `V(p)`
//! the vertices off `p`. The determinant over an empty vertex set is 1, so
//! Hamiltonian paths contribute bare `(-1)^l(p) A[p]` terms. For M-matrices
//! every term is nonnegative, which yields the reachability criterion of
//! [`predict_sign_structure`].

use alloc::vec::Vec;

use serde::Serialize;

use crate::digraph::{Digraph, Path};
use crate::error::{Error, Result};
use crate::matcore::{Rational, RationalMatrix};
use crate::mclass;

/// One path's contribution to an off-diagonal inverse entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathTerm {
    pub path: Path,
    /// A[p]: the product of entries along the path.
    #[serde(rename = "product")]
    pub path_product: Rational,
    /// (-1)^l(p).
    pub sign: i8,
    /// det A[V(p)], with det of the empty set taken as 1.
    pub complement_minor: Rational,
    /// sign * product * complement_minor.
    #[serde(rename = "value")]
    pub term_value: Rational,
}

/// Exact sign of a matrix entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "-")]
    Neg,
}

/// An n x n grid of entry signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignPattern {
    n: usize,
    signs: Vec<Vec<Sign>>,
}

impl SignPattern {
    /// The exact sign of each entry of `a`.
    pub fn of(a: &RationalMatrix) -> Self {
        let n = a.order();
        let signs = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match a.get(i, j).signum() {
                        1 => Sign::Pos,
                        -1 => Sign::Neg,
                        _ => Sign::Zero,
                    })
                    .collect()
            })
            .collect();
        SignPattern { n, signs }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Sign) -> Self {
        let signs = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        SignPattern { n, signs }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Sign {
        self.signs[i][j]
    }
}

/// A[p]: 1 for a single-vertex path, otherwise the product of the entries
/// along consecutive path edges. Fails with [`Error::InvalidPath`] if some
/// consecutive pair is not an edge of D(A), i.e. the entry is zero.
pub fn path_product(a: &RationalMatrix, p: &Path) -> Result<Rational> {
    let mut product = Rational::one();
    for w in p.vertices().windows(2) {
        let e = a.get(w[0], w[1]);
        if e.is_zero() {
            return Err(Error::InvalidPath {
                from: w[0],
                to: w[1],
            });
        }
        product *= e;
    }
    Ok(product)
}

fn entry_terms(
    a: &RationalMatrix,
    g: &Digraph,
    i: usize,
    j: usize,
    cap: usize,
) -> Result<(Rational, Vec<PathTerm>)> {
    let n = a.order();
    let mut sum = Rational::zero();
    let mut terms = Vec::new();
    for path in g.enumerate_simple_paths(i, j, cap)? {
        let path_product = path_product(a, &path)?;
        let sign: i8 = if path.len_edges() % 2 == 0 { 1 } else { -1 };
        let complement = path.complement(n)?;
        let complement_minor = if complement.is_empty() {
            Rational::one()
        } else {
            a.principal(&complement)?.determinant()
        };
        let mut term_value = &path_product * &complement_minor;
        if sign < 0 {
            term_value = -term_value;
        }
        sum += &term_value;
        terms.push(PathTerm {
            path,
            path_product,
            sign,
            complement_minor,
            term_value,
        });
    }
    Ok((sum, terms))
}

/// One inverse entry by the path-sum formula, along with the per-path term
/// breakdown (empty for diagonal entries, which use the quotient of
/// principal minors instead — there are no nontrivial simple paths i -> i).
pub fn inverse_entry(
    a: &RationalMatrix,
    i: usize,
    j: usize,
    cap: usize,
) -> Result<(Rational, Vec<PathTerm>)> {
    let det = a.determinant();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let g = Digraph::of_matrix(a);
    inverse_entry_with(a, &g, &det, i, j, cap)
}

fn inverse_entry_with(
    a: &RationalMatrix,
    g: &Digraph,
    det: &Rational,
    i: usize,
    j: usize,
    cap: usize,
) -> Result<(Rational, Vec<PathTerm>)> {
    if i == j {
        let minor = match a.principal_complement(&crate::matcore::IndexSet::singleton(i)) {
            Ok(sub) => sub.determinant(),
            Err(Error::EmptyComplement) => Rational::one(),
            Err(e) => return Err(e),
        };
        return Ok((minor.checked_div(det)?, Vec::new()));
    }
    let (sum, terms) = entry_terms(a, g, i, j, cap)?;
    Ok((sum.checked_div(det)?, terms))
}

/// The full inverse via the path-sum formula. Exactly equals
/// [`RationalMatrix::inverse_direct`]; the two routes share no elimination
/// code, so their agreement is a meaningful cross-check.
pub fn inverse(a: &RationalMatrix, cap: usize) -> Result<RationalMatrix> {
    let n = a.order();
    let det = a.determinant();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let g = Digraph::of_matrix(a);
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(inverse_entry_with(a, &g, &det, i, j, cap)?.0);
        }
    }
    RationalMatrix::new(n, entries)
}

/// Predicts the sign pattern of `A^{-1}` from reachability alone: diagonal
/// entries are positive; `(i, j)` is positive iff D(A) has a path i -> j,
/// else zero. Requires an M-matrix — the prediction is unsound otherwise —
/// so the input is classified first.
pub fn predict_sign_structure(a: &RationalMatrix) -> Result<SignPattern> {
    if !mclass::is_m_matrix(a)? {
        return Err(Error::NotMMatrix);
    }
    let g = Digraph::of_matrix(a);
    Ok(SignPattern::from_fn(a.order(), |i, j| {
        if i == j || g.reachable(i, j) {
            Sign::Pos
        } else {
            Sign::Zero
        }
    }))
}

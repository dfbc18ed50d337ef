//! Z-matrix and M-matrix classification with machine-checkable witnesses.
//!
//! Four independent condition checks are provided: positivity of all
//! principal minors (exhaustive, the authoritative test up to order 16),
//! nonnegativity of the inverse (authoritative beyond that), existence of a
//! positive vector with `Ax > 0`, and an advisory spectral-radius bound for
//! the `A = sI - B` representation. [`classify`] runs all applicable checks
//! and demands mutual agreement; a disagreement is reported as an error,
//! never resolved silently.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{IndexSet, Rational, RationalMatrix};

/// Largest order for which the exhaustive principal-minor test runs.
pub const MINOR_TEST_MAX_ORDER: usize = 16;

/// Fixed iteration count used by [`classify`] for the advisory spectral
/// check.
pub const DEFAULT_SPECTRAL_ITERATIONS: usize = 12;

/// Condition identifiers for [`MClassReport::method_verdicts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MTest {
    #[serde(rename = "PRINCIPAL_MINORS")]
    PrincipalMinors,
    #[serde(rename = "INVERSE_NONNEG")]
    InverseNonneg,
    #[serde(rename = "POSITIVE_VECTOR")]
    PositiveVector,
    #[serde(rename = "SPECTRAL")]
    Spectral,
}

/// Classification verdict plus the evidence that backs it.
#[derive(Debug, Clone, Serialize)]
pub struct MClassReport {
    pub is_z: bool,
    pub is_m: bool,
    /// Verdict of each condition that was evaluated. The spectral verdict is
    /// advisory: `true` is sound, `false` is inconclusive.
    pub method_verdicts: BTreeMap<MTest, bool>,
    /// Integer vector `x > 0` with `Ax > 0`, when one was found.
    pub witness_vector: Option<Vec<Rational>>,
    /// The nonnegative inverse, when it exists.
    pub witness_inverse: Option<RationalMatrix>,
    /// First principal minor (lexicographically) that is not positive.
    pub failing_minor: Option<(IndexSet, Rational)>,
    /// First negative inverse entry, row-major.
    #[serde(serialize_with = "crate::serde1b::ser_opt_pair")]
    pub failing_entry: Option<(usize, usize)>,
}

/// True iff every off-diagonal entry is nonpositive.
pub fn is_z_matrix(a: &RationalMatrix) -> bool {
    let n = a.order();
    for i in 0..n {
        for j in 0..n {
            if i != j && a.get(i, j).is_positive() {
                return false;
            }
        }
    }
    true
}

/// Visits every nonempty subset of `0..n` in lexicographic order of the
/// ascending index sequences; stops early when `f` returns `false`.
fn for_each_subset_lex(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if n == 0 {
        return;
    }
    let mut subset: Vec<usize> = vec![0];
    loop {
        if !f(&subset) {
            return;
        }
        let last = *subset.last().unwrap();
        if last + 1 < n {
            subset.push(last + 1);
        } else {
            subset.pop();
            match subset.last_mut() {
                Some(x) => *x += 1,
                None => return,
            }
        }
    }
}

/// Checks `det A[alpha] > 0` for every nonempty `alpha`, exhaustively over
/// all `2^n - 1` subsets. On failure returns the lexicographically first
/// failing subset together with its determinant. Orders above
/// [`MINOR_TEST_MAX_ORDER`] are rejected.
pub fn check_principal_minors(a: &RationalMatrix) -> Result<(bool, Option<(IndexSet, Rational)>)> {
    let n = a.order();
    if n > MINOR_TEST_MAX_ORDER {
        return Err(Error::SizeLimit {
            order: n,
            max: MINOR_TEST_MAX_ORDER,
        });
    }
    let mut failure: Option<(IndexSet, Rational)> = None;
    for_each_subset_lex(n, |subset| {
        let alpha = IndexSet::new(subset.to_vec(), n).expect("subset in range");
        let det = a.principal(&alpha).expect("valid subset").determinant();
        if det.is_positive() {
            true
        } else {
            failure = Some((alpha, det));
            false
        }
    });
    Ok((failure.is_none(), failure))
}

/// Outcome of the inverse-nonnegativity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseNonnegOutcome {
    /// The inverse exists and is entrywise nonnegative.
    Nonnegative(RationalMatrix),
    /// First negative entry of the inverse, row-major.
    NegativeEntry {
        row: usize,
        col: usize,
        value: Rational,
    },
    Singular,
}

impl InverseNonnegOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, InverseNonnegOutcome::Nonnegative(_))
    }
}

/// Checks that `A` is nonsingular with `A^{-1} >= 0`.
pub fn check_inverse_nonneg(a: &RationalMatrix) -> InverseNonnegOutcome {
    let inv = match a.inverse_direct() {
        Ok(inv) => inv,
        Err(_) => return InverseNonnegOutcome::Singular,
    };
    let n = inv.order();
    for i in 0..n {
        for j in 0..n {
            if inv.get(i, j).is_negative() {
                return InverseNonnegOutcome::NegativeEntry {
                    row: i,
                    col: j,
                    value: inv.get(i, j).clone(),
                };
            }
        }
    }
    InverseNonnegOutcome::Nonnegative(inv)
}

/// Searches for an integer vector `x > 0` with `Ax > 0`. Requires a
/// Z-matrix. Tries `x = A^{-1} * 1` (scaled to integers) when the inverse
/// exists and is nonnegative, then `x = 1` (positive row sums). Returns
/// `None` when no witness exists, which is cross-checked against the
/// authoritative minor test before being reported.
pub fn check_positive_vector(a: &RationalMatrix) -> Result<Option<Vec<Rational>>> {
    if !is_z_matrix(a) {
        return Err(Error::NotZMatrix);
    }
    let n = a.order();
    let ones = vec![Rational::one(); n];
    if let InverseNonnegOutcome::Nonnegative(inv) = check_inverse_nonneg(a) {
        let x = inv.mul_vec(&ones)?;
        let mut lcm = BigInt::one();
        for e in &x {
            lcm = lcm.lcm(e.denom());
        }
        let scale = Rational::from_bigints(lcm, BigInt::one())?;
        let x: Vec<Rational> = x.iter().map(|e| e * &scale).collect();
        let ax = a.mul_vec(&x)?;
        if x.iter().all(Rational::is_positive) && ax.iter().all(Rational::is_positive) {
            return Ok(Some(x));
        }
        return Err(Error::InternalInconsistency(
            "nonnegative inverse yielded no positive vector witness".to_string(),
        ));
    }
    let ax = a.mul_vec(&ones)?;
    if ax.iter().all(Rational::is_positive) {
        return Ok(Some(ones));
    }
    // Both routes failed; the matrix must fail the authoritative test too.
    if n <= MINOR_TEST_MAX_ORDER && check_principal_minors(a)?.0 {
        return Err(Error::InternalInconsistency(
            "positive-vector routes failed although all principal minors are positive".to_string(),
        ));
    }
    Ok(None)
}

/// Advisory spectral test for a Z-matrix: writes `A = sI - B` with
/// `s = max_i a_ii` and `B = sI - A >= 0`, then certifies an upper bound on
/// the spectral radius of `B` by power iteration on `B + shift*I` with the
/// Collatz-Wielandt quotient (`rho(B) <= max_i (Bx)_i / x_i` for `x > 0`).
/// Returns `true` iff the certified bound is `< s`.
///
/// `true` is sound (`A` really is an M-matrix); `false` is inconclusive.
/// `shift` must be positive; it keeps the iterates strictly positive so the
/// quotient stays well-defined.
pub fn check_spectral(a: &RationalMatrix, iterations: usize, shift: &Rational) -> Result<bool> {
    if !is_z_matrix(a) {
        return Err(Error::NotZMatrix);
    }
    assert!(shift.is_positive(), "shift must be positive");
    let n = a.order();
    if n == 0 {
        return Ok(true);
    }
    let s = (0..n)
        .map(|i| a.get(i, i).clone())
        .max()
        .expect("nonempty diagonal");
    let b = RationalMatrix::from_fn(n, |i, j| {
        if i == j {
            &s - a.get(i, j)
        } else {
            -a.get(i, j)
        }
    });
    let mut x = vec![Rational::one(); n];
    let mut best: Option<Rational> = None;
    for _ in 0..iterations.max(1) {
        let bx = b.mul_vec(&x)?;
        let y: Vec<Rational> = (0..n).map(|i| &bx[i] + &(shift * &x[i])).collect();
        let quotient = (0..n)
            .map(|i| y[i].checked_div(&x[i]).expect("iterates stay positive"))
            .max()
            .expect("nonempty");
        let bound = &quotient - shift;
        best = Some(match best {
            Some(prev) if prev <= bound => prev,
            _ => bound,
        });
        let max_y = y.iter().max().expect("nonempty").clone();
        x = y.iter().map(|e| e / &max_y).collect();
    }
    Ok(best.expect("at least one iteration") < s)
}

/// Runs every applicable condition check and asserts their mutual
/// agreement. The advisory spectral verdict participates one-sidedly: when
/// it is `true` the authoritative verdicts must be `true` as well.
pub fn classify(a: &RationalMatrix) -> Result<MClassReport> {
    let n = a.order();
    let is_z = is_z_matrix(a);
    let mut report = MClassReport {
        is_z,
        is_m: false,
        method_verdicts: BTreeMap::new(),
        witness_vector: None,
        witness_inverse: None,
        failing_minor: None,
        failing_entry: None,
    };
    if !is_z {
        return Ok(report);
    }

    let mut authoritative: Vec<bool> = Vec::new();

    if n <= MINOR_TEST_MAX_ORDER {
        let (ok, failure) = check_principal_minors(a)?;
        report.method_verdicts.insert(MTest::PrincipalMinors, ok);
        report.failing_minor = failure;
        authoritative.push(ok);
    }

    let inv_outcome = check_inverse_nonneg(a);
    report
        .method_verdicts
        .insert(MTest::InverseNonneg, inv_outcome.holds());
    authoritative.push(inv_outcome.holds());
    match inv_outcome {
        InverseNonnegOutcome::Nonnegative(inv) => report.witness_inverse = Some(inv),
        InverseNonnegOutcome::NegativeEntry { row, col, .. } => {
            report.failing_entry = Some((row, col));
        }
        InverseNonnegOutcome::Singular => {}
    }

    let witness = check_positive_vector(a)?;
    report
        .method_verdicts
        .insert(MTest::PositiveVector, witness.is_some());
    authoritative.push(witness.is_some());
    report.witness_vector = witness;

    let spectral = check_spectral(a, DEFAULT_SPECTRAL_ITERATIONS, &Rational::one())?;
    report.method_verdicts.insert(MTest::Spectral, spectral);

    let agreed = authoritative[0];
    if authoritative.iter().any(|&v| v != agreed) {
        return Err(Error::InternalInconsistency(alloc::format!(
            "M-matrix condition checks disagree: {:?}",
            report.method_verdicts
        )));
    }
    if spectral && !agreed {
        return Err(Error::InternalInconsistency(
            "spectral bound certified an M-matrix the authoritative tests reject".to_string(),
        ));
    }
    report.is_m = agreed;
    if report.is_m && (0..n).any(|i| !a.get(i, i).is_positive()) {
        return Err(Error::InternalInconsistency(
            "M-matrix verdict with a nonpositive diagonal entry".to_string(),
        ));
    }
    Ok(report)
}

/// Convenience wrapper: `classify(a)?.is_m`.
pub fn is_m_matrix(a: &RationalMatrix) -> Result<bool> {
    Ok(classify(a)?.is_m)
}

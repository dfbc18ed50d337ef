//! Band-structure conditions on M-matrices and verifiers for the
//! tridiagonal/pentadiagonal inverse results.
//!
//! The tridiagonal condition forbids two consecutive nonzeros along the
//! sub-diagonal or along the super-diagonal. The six pentadiagonal
//! conditions (first, second, and third order) constrain entries and 2x2
//! minors near the band in the same spirit. Verifiers recompute both sides
//! of each claimed equivalence from scratch and report a violation as an
//! internal-consistency error rather than assuming the theorem.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{IndexSet, Rational, RationalMatrix};
use crate::mclass;

/// Identifiers for the band conditions. `TriSub`/`TriSuper` are the two
/// implications of the tridiagonal condition; `P1`-`P6` are the six
/// pentadiagonal conditions in order (first order: P1, P2; second order:
/// P3, P4; third order: P5, P6).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConditionId {
    #[serde(rename = "TRI_SUB")]
    TriSub,
    #[serde(rename = "TRI_SUPER")]
    TriSuper,
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
}

/// A named scalar appearing in a violated implication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub term: String,
    pub value: Rational,
}

impl Evidence {
    fn entry(a: &RationalMatrix, i: usize, j: usize) -> Self {
        Evidence {
            term: alloc::format!("a[{}][{}]", i + 1, j + 1),
            value: a.get(i, j).clone(),
        }
    }

    fn det2(label: String, value: Rational) -> Self {
        Evidence { term: label, value }
    }
}

/// One index where an implication fails: every antecedent factor nonzero,
/// yet some consequent that must vanish is nonzero too.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// The condition's running index i (serialized 1-based).
    #[serde(serialize_with = "crate::serde1b::ser_index")]
    pub index: usize,
    pub antecedent: Vec<Evidence>,
    pub consequent: Vec<Evidence>,
}

/// Pass/fail evidence for one band condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition_id: ConditionId,
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl ConditionReport {
    fn new(condition_id: ConditionId, violations: Vec<Violation>) -> Self {
        ConditionReport {
            condition_id,
            holds: violations.is_empty(),
            violations,
        }
    }
}

/// Aggregate facts for the theorem verifiers: band widths of `A` and
/// `A^{-1}`, the derived band predicates, and the condition reports on `A`
/// (and, for the tridiagonal equivalence, on `A^{-1}`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandVerdict {
    pub a_band: (usize, usize),
    pub ainv_band: (usize, usize),
    pub a_is_tridiagonal: bool,
    pub a_is_pentadiagonal: bool,
    pub ainv_is_tridiagonal: bool,
    pub ainv_is_pentadiagonal: bool,
    pub condition_reports: Vec<ConditionReport>,
    pub inverse_condition_reports: Vec<ConditionReport>,
}

/// Tridiagonal means order >= 3 and zero entries beyond the first band.
pub fn is_tridiagonal(a: &RationalMatrix) -> bool {
    let (l, u) = a.bandwidth();
    a.order() >= 3 && l.max(u) <= 1
}

/// Pentadiagonal means order >= 4 and zero entries beyond the second band.
pub fn is_pentadiagonal(a: &RationalMatrix) -> bool {
    let (l, u) = a.bandwidth();
    a.order() >= 4 && l.max(u) <= 2
}

fn det2(
    a: &RationalMatrix,
    rows: (usize, usize),
    cols: (usize, usize),
) -> Result<(String, Rational)> {
    let n = a.order();
    let r = IndexSet::new(vec![rows.0, rows.1], n)?;
    let c = IndexSet::new(vec![cols.0, cols.1], n)?;
    let label = alloc::format!(
        "det A[{},{}|{},{}]",
        rows.0 + 1,
        rows.1 + 1,
        cols.0 + 1,
        cols.1 + 1
    );
    Ok((label, a.submatrix(&r, &c)?.determinant()))
}

/// The two implications of the tridiagonal condition, evaluated for every
/// index from the second through the next-to-last row (as stated, never
/// beyond): a nonzero sub-diagonal entry forbids the next sub-diagonal
/// entry, and likewise along the super-diagonal. Returns the
/// `(sub, super)` reports.
pub fn check_condition_tri(a: &RationalMatrix) -> Result<(ConditionReport, ConditionReport)> {
    let n = a.order();
    if n < 3 {
        return Err(Error::SizeTooSmall { order: n, min: 3 });
    }
    let mut sub = Vec::new();
    let mut sup = Vec::new();
    for i in 1..=n - 2 {
        if !a.get(i, i - 1).is_zero() && !a.get(i + 1, i).is_zero() {
            sub.push(Violation {
                index: i,
                antecedent: vec![Evidence::entry(a, i, i - 1)],
                consequent: vec![Evidence::entry(a, i + 1, i)],
            });
        }
        if !a.get(i - 1, i).is_zero() && !a.get(i, i + 1).is_zero() {
            sup.push(Violation {
                index: i,
                antecedent: vec![Evidence::entry(a, i - 1, i)],
                consequent: vec![Evidence::entry(a, i, i + 1)],
            });
        }
    }
    Ok((
        ConditionReport::new(ConditionId::TriSub, sub),
        ConditionReport::new(ConditionId::TriSuper, sup),
    ))
}

/// The six pentadiagonal conditions. First-order conditions run over the
/// second through (n-2)nd index; second- and third-order conditions start
/// one later, exactly as stated. The 2x2 determinants are taken on the
/// stated row/column sets literally.
pub fn check_conditions_penta(a: &RationalMatrix) -> Result<Vec<ConditionReport>> {
    let n = a.order();
    if n < 4 {
        return Err(Error::SizeTooSmall { order: n, min: 4 });
    }

    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for i in 1..=n - 3 {
        // P1: a_{i(i-1)} a_{(i+1)i} != 0  =>  a_{(i+2)(i+1)} = 0
        if !a.get(i, i - 1).is_zero()
            && !a.get(i + 1, i).is_zero()
            && !a.get(i + 2, i + 1).is_zero()
        {
            p1.push(Violation {
                index: i,
                antecedent: vec![Evidence::entry(a, i, i - 1), Evidence::entry(a, i + 1, i)],
                consequent: vec![Evidence::entry(a, i + 2, i + 1)],
            });
        }
        // P2: a_{i(i+1)} a_{(i+1)(i+2)} != 0  =>  a_{(i-1)i} = 0
        if !a.get(i, i + 1).is_zero()
            && !a.get(i + 1, i + 2).is_zero()
            && !a.get(i - 1, i).is_zero()
        {
            p2.push(Violation {
                index: i,
                antecedent: vec![
                    Evidence::entry(a, i, i + 1),
                    Evidence::entry(a, i + 1, i + 2),
                ],
                consequent: vec![Evidence::entry(a, i - 1, i)],
            });
        }
    }

    let mut p3 = Vec::new();
    let mut p4 = Vec::new();
    let mut p5 = Vec::new();
    let mut p6 = Vec::new();
    for i in 2..=n.saturating_sub(3) {
        // P3: det A[i-2,i | i-2,i-1] != 0  =>  a_{(i+2)i} = 0
        let (label, d) = det2(a, (i - 2, i), (i - 2, i - 1))?;
        if !d.is_zero() && !a.get(i + 2, i).is_zero() {
            p3.push(Violation {
                index: i,
                antecedent: vec![Evidence::det2(label, d)],
                consequent: vec![Evidence::entry(a, i + 2, i)],
            });
        }
        // P4: det A[i,i+2 | i+1,i+2] != 0  =>  a_{(i-2)i} = 0
        let (label, d) = det2(a, (i, i + 2), (i + 1, i + 2))?;
        if !d.is_zero() && !a.get(i - 2, i).is_zero() {
            p4.push(Violation {
                index: i,
                antecedent: vec![Evidence::det2(label, d)],
                consequent: vec![Evidence::entry(a, i - 2, i)],
            });
        }
        // P5: a_{i(i-2)} != 0  =>  a_{(i+2)i} = 0 and det A[i-1,i+1|i-1,i] = 0
        if !a.get(i, i - 2).is_zero() {
            let mut bad = Vec::new();
            if !a.get(i + 2, i).is_zero() {
                bad.push(Evidence::entry(a, i + 2, i));
            }
            let (label, d) = det2(a, (i - 1, i + 1), (i - 1, i))?;
            if !d.is_zero() {
                bad.push(Evidence::det2(label, d));
            }
            if !bad.is_empty() {
                p5.push(Violation {
                    index: i,
                    antecedent: vec![Evidence::entry(a, i, i - 2)],
                    consequent: bad,
                });
            }
        }
        // P6: a_{i(i+2)} != 0  =>  a_{(i-2)i} = 0 and det A[i-1,i+1|i,i+1] = 0
        if !a.get(i, i + 2).is_zero() {
            let mut bad = Vec::new();
            if !a.get(i - 2, i).is_zero() {
                bad.push(Evidence::entry(a, i - 2, i));
            }
            let (label, d) = det2(a, (i - 1, i + 1), (i, i + 1))?;
            if !d.is_zero() {
                bad.push(Evidence::det2(label, d));
            }
            if !bad.is_empty() {
                p6.push(Violation {
                    index: i,
                    antecedent: vec![Evidence::entry(a, i, i + 2)],
                    consequent: bad,
                });
            }
        }
    }

    Ok(vec![
        ConditionReport::new(ConditionId::P1, p1),
        ConditionReport::new(ConditionId::P2, p2),
        ConditionReport::new(ConditionId::P3, p3),
        ConditionReport::new(ConditionId::P4, p4),
        ConditionReport::new(ConditionId::P5, p5),
        ConditionReport::new(ConditionId::P6, p6),
    ])
}

/// Verdict of the zero-propagation lemma for nonsingular tridiagonal
/// matrices: (a) a zero on the first band of `A` forces a zero at the same
/// position of `A^{-1}`; (b) if `A` satisfies the tridiagonal condition,
/// so does `A^{-1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaTridiagVerdict {
    pub zero_propagation_holds: bool,
    /// First band position where clause (a) failed (serialized 1-based).
    #[serde(serialize_with = "crate::serde1b::ser_opt_pair")]
    pub zero_propagation_failure: Option<(usize, usize)>,
    pub a_satisfies_condition: bool,
    /// None when `A` does not satisfy the condition (clause (b) vacuous).
    pub inverse_satisfies_condition: Option<bool>,
}

impl LemmaTridiagVerdict {
    /// A failure here is a library-bug alarm, not an expected outcome.
    pub fn holds(&self) -> bool {
        self.zero_propagation_holds && self.inverse_satisfies_condition.unwrap_or(true)
    }
}

/// Checks both lemma clauses on a nonsingular tridiagonal matrix (not
/// necessarily an M-matrix).
pub fn verify_lemma_tridiag(a: &RationalMatrix) -> Result<LemmaTridiagVerdict> {
    if !is_tridiagonal(a) {
        return Err(Error::NotTridiagonal);
    }
    let inv = a.inverse_direct()?;
    let n = a.order();
    let mut failure = None;
    'outer: for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) == 1 && a.get(i, j).is_zero() && !inv.get(i, j).is_zero() {
                failure = Some((i, j));
                break 'outer;
            }
        }
    }
    let (sub, sup) = check_condition_tri(a)?;
    let a_satisfies = sub.holds && sup.holds;
    let inverse_satisfies = if a_satisfies {
        let (isub, isup) = check_condition_tri(&inv)?;
        Some(isub.holds && isup.holds)
    } else {
        None
    };
    Ok(LemmaTridiagVerdict {
        zero_propagation_holds: failure.is_none(),
        zero_propagation_failure: failure,
        a_satisfies_condition: a_satisfies,
        inverse_satisfies_condition: inverse_satisfies,
    })
}

fn band_verdict(
    a: &RationalMatrix,
    inv: &RationalMatrix,
    condition_reports: Vec<ConditionReport>,
    inverse_condition_reports: Vec<ConditionReport>,
) -> BandVerdict {
    BandVerdict {
        a_band: a.bandwidth(),
        ainv_band: inv.bandwidth(),
        a_is_tridiagonal: is_tridiagonal(a),
        a_is_pentadiagonal: is_pentadiagonal(a),
        ainv_is_tridiagonal: is_tridiagonal(inv),
        ainv_is_pentadiagonal: is_pentadiagonal(inv),
        condition_reports,
        inverse_condition_reports,
    }
}

/// Verifies, for an M-matrix, the three-way equivalence: `A^{-1}`
/// tridiagonal <=> `A` tridiagonal satisfying the condition <=> `A^{-1}`
/// tridiagonal satisfying the condition. Both sides are computed
/// independently (band width of the actual inverse vs. condition checks on
/// `A`); disagreement is an [`Error::InternalInconsistency`].
pub fn verify_theorem_tridiag(a: &RationalMatrix) -> Result<BandVerdict> {
    let n = a.order();
    if n < 3 {
        return Err(Error::SizeTooSmall { order: n, min: 3 });
    }
    if !mclass::is_m_matrix(a)? {
        return Err(Error::NotMMatrix);
    }
    let inv = a.inverse_direct()?;
    let (sub_a, sup_a) = check_condition_tri(a)?;
    let (sub_i, sup_i) = check_condition_tri(&inv)?;
    let verdict = band_verdict(
        a,
        &inv,
        vec![sub_a.clone(), sup_a.clone()],
        vec![sub_i.clone(), sup_i.clone()],
    );

    let first = verdict.ainv_is_tridiagonal;
    let second = verdict.a_is_tridiagonal && sub_a.holds && sup_a.holds;
    let third = verdict.ainv_is_tridiagonal && sub_i.holds && sup_i.holds;
    if first != second || second != third {
        return Err(Error::InternalInconsistency(alloc::format!(
            "tridiagonal equivalence broken: inverse-tridiagonal={first}, \
             condition-on-A={second}, condition-on-inverse={third}"
        )));
    }
    Ok(verdict)
}

/// Verifies the necessary direction for an M-matrix: when `A^{-1}` is
/// pentadiagonal, `A` must be pentadiagonal and all six conditions must
/// hold. When the inverse is not pentadiagonal the facts are recorded
/// without asserting anything (the result is one-directional).
pub fn verify_theorem_penta(a: &RationalMatrix) -> Result<BandVerdict> {
    let n = a.order();
    if n < 4 {
        return Err(Error::SizeTooSmall { order: n, min: 4 });
    }
    if !mclass::is_m_matrix(a)? {
        return Err(Error::NotMMatrix);
    }
    let inv = a.inverse_direct()?;
    let reports = check_conditions_penta(a)?;
    let verdict = band_verdict(a, &inv, reports, Vec::new());
    if verdict.ainv_is_pentadiagonal {
        if !verdict.a_is_pentadiagonal {
            return Err(Error::InternalInconsistency(
                "pentadiagonal inverse of a non-pentadiagonal M-matrix".into(),
            ));
        }
        if let Some(bad) = verdict.condition_reports.iter().find(|r| !r.holds) {
            return Err(Error::InternalInconsistency(alloc::format!(
                "pentadiagonal inverse but condition {:?} fails",
                bad.condition_id
            )));
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 4x4 tridiagonal instance that satisfies the condition.
    fn a_instance() -> RationalMatrix {
        RationalMatrix::from_rows([[2, -1, 0, 0], [0, 2, 0, 0], [0, -1, 2, -1], [0, 0, 0, 2]])
    }

    /// One entry changed: a_21 nonzero breaks the condition.
    fn b_instance() -> RationalMatrix {
        RationalMatrix::from_rows([[2, -1, 0, 0], [-1, 2, 0, 0], [0, -1, 2, -1], [0, 0, 0, 2]])
    }

    #[test]
    fn tri_condition_on_both_instances() {
        let (sub, sup) = check_condition_tri(&a_instance()).unwrap();
        assert!(sub.holds && sup.holds);

        let (sub, sup) = check_condition_tri(&b_instance()).unwrap();
        assert!(!sub.holds);
        assert_eq!(sub.violations.len(), 1);
        assert_eq!(sub.violations[0].index, 1); // the statement's i = 2
        assert_eq!(sub.violations[0].antecedent[0].term, "a[2][1]");
        assert_eq!(sub.violations[0].consequent[0].term, "a[3][2]");
        assert!(sup.holds);

        // Zero sub-diagonal: the sub condition holds vacuously.
        let upper = RationalMatrix::from_rows([[1, -1, 0], [0, 1, -1], [0, 0, 1]]);
        let (sub, sup) = check_condition_tri(&upper).unwrap();
        assert!(sub.holds);
        assert!(!sup.holds); // two consecutive super-diagonal nonzeros

        assert_eq!(
            check_condition_tri(&RationalMatrix::identity(2)),
            Err(Error::SizeTooSmall { order: 2, min: 3 })
        );
    }

    #[test]
    fn penta_conditions_on_dense_tridiagonal() {
        let a = RationalMatrix::from_rows([
            [10, -1, 0, 0],
            [-1, 10, -1, 0],
            [0, -1, 10, -1],
            [0, 0, -1, 10],
        ]);
        let reports = check_conditions_penta(&a).unwrap();
        let p1 = &reports[0];
        assert_eq!(p1.condition_id, ConditionId::P1);
        assert!(!p1.holds);
        assert_eq!(p1.violations[0].index, 1); // the statement's i = 2
        let p2 = &reports[1];
        assert!(!p2.holds);
        // second/third order ranges are empty at n = 4
        for r in &reports[2..] {
            assert!(r.holds);
        }
    }

    #[test]
    fn penta_third_order_violation() {
        // diag 10, nonzeros at (3,1) and (5,3) 1-based: P5 fails at i = 3.
        let a = RationalMatrix::from_fn(5, |i, j| {
            if i == j {
                Rational::from_integer(10)
            } else if (i, j) == (2, 0) || (i, j) == (4, 2) {
                Rational::from_integer(-1)
            } else {
                Rational::zero()
            }
        });
        assert!(mclass::is_m_matrix(&a).unwrap());
        let reports = check_conditions_penta(&a).unwrap();
        let p5 = &reports[4];
        assert_eq!(p5.condition_id, ConditionId::P5);
        assert!(!p5.holds);
        assert_eq!(p5.violations.len(), 1);
        assert_eq!(p5.violations[0].index, 2); // the statement's i = 3
        assert_eq!(p5.violations[0].consequent[0].term, "a[5][3]");
        // The 2x2 minors in P3/P4 vanish here, so those stay vacuous.
        assert!(reports[2].holds);
        assert!(reports[3].holds);
    }

    #[test]
    fn tri_satisfying_matrix_passes_all_penta_conditions() {
        let reports = check_conditions_penta(&a_instance()).unwrap();
        assert!(reports.iter().all(|r| r.holds));
        assert_eq!(
            check_conditions_penta(&RationalMatrix::identity(3)),
            Err(Error::SizeTooSmall { order: 3, min: 4 })
        );
    }

    #[test]
    fn lemma_on_tridiagonal_matrices() {
        let v = verify_lemma_tridiag(&a_instance()).unwrap();
        assert!(v.holds());
        assert!(v.a_satisfies_condition);
        assert_eq!(v.inverse_satisfies_condition, Some(true));

        // Nonsingular diagonal matrix: trivially passes.
        let d = RationalMatrix::from_rows([[2, 0, 0], [0, -3, 0], [0, 0, 5]]);
        let v = verify_lemma_tridiag(&d).unwrap();
        assert!(v.holds());

        // The lemma applies to non-M tridiagonal matrices too.
        let s = RationalMatrix::from_rows([[0, 2, 0], [1, 0, 0], [0, 3, 1]]);
        let v = verify_lemma_tridiag(&s).unwrap();
        assert!(v.holds());

        assert_eq!(
            verify_lemma_tridiag(&RationalMatrix::from_rows([[1, 1], [1, 1]])),
            Err(Error::NotTridiagonal)
        );
        let singular = RationalMatrix::from_rows([[1, 1, 0], [1, 1, 0], [0, 0, 1]]);
        assert_eq!(verify_lemma_tridiag(&singular), Err(Error::Singular));
    }

    #[test]
    fn theorem_tridiag_on_both_instances() {
        let v = verify_theorem_tridiag(&a_instance()).unwrap();
        assert!(v.a_is_tridiagonal && v.ainv_is_tridiagonal);
        assert!(v.condition_reports.iter().all(|r| r.holds));
        assert!(v.inverse_condition_reports.iter().all(|r| r.holds));

        let v = verify_theorem_tridiag(&b_instance()).unwrap();
        assert!(v.a_is_tridiagonal);
        assert!(!v.ainv_is_tridiagonal);
        assert!(!v.condition_reports[0].holds);
        // B^{-1}(3,1) = a21 a32 / (gamma a33) = 1/6 with gamma = 3.
        let inv = b_instance().inverse_direct().unwrap();
        assert_eq!(inv.get(2, 0), &"1/6".parse().unwrap());

        let diag = RationalMatrix::from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        let v = verify_theorem_tridiag(&diag).unwrap();
        assert!(v.ainv_is_tridiagonal);

        assert_eq!(
            verify_theorem_tridiag(&RationalMatrix::from_rows([
                [1, 1, 1],
                [0, 1, 0],
                [0, 1, 1]
            ])),
            Err(Error::NotMMatrix)
        );
    }

    #[test]
    fn theorem_penta_records_without_asserting() {
        let dense = RationalMatrix::from_rows([
            [10, -1, 0, 0],
            [-1, 10, -1, 0],
            [0, -1, 10, -1],
            [0, 0, -1, 10],
        ]);
        let v = verify_theorem_penta(&dense).unwrap();
        // Full reachability in both directions: the inverse is entrywise
        // positive, so the corner entries spoil pentadiagonality at n = 4.
        assert!(!v.ainv_is_pentadiagonal);
        assert!(v.a_is_pentadiagonal);

        // Block diagonal with two dense 2x2 M-blocks: the inverse is block
        // diagonal, hence pentadiagonal; the conditions must hold.
        let block = RationalMatrix::from_rows([
            [3, -1, 0, 0],
            [-1, 3, 0, 0],
            [0, 0, 4, -2],
            [0, 0, -1, 4],
        ]);
        let v = verify_theorem_penta(&block).unwrap();
        assert!(v.ainv_is_pentadiagonal && v.a_is_pentadiagonal);
        assert!(v.condition_reports.iter().all(|r| r.holds));

        assert_eq!(
            verify_theorem_penta(&RationalMatrix::identity(3)),
            Err(Error::SizeTooSmall { order: 3, min: 4 })
        );
    }
}

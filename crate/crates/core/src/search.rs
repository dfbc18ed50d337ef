//! Random and exhaustive generation of banded M-matrix families, plus the
//! hunt for a pentadiagonal M-matrix that satisfies all six band conditions
//! yet has a non-pentadiagonal inverse (the unresolved converse direction).
//!
//! M-matrices are constructed by dominance lifting: draw nonpositive
//! off-diagonal entries inside the band, then set each diagonal entry to
//! the row's absolute off-diagonal sum plus a positive slack. Row sums are
//! then positive, so the result is an M-matrix; every draw is re-verified
//! through the classifier anyway. All generation is deterministic given
//! the seed.

use alloc::string::ToString;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::banded;
use crate::digraph::{Digraph, Path, DEFAULT_PATH_CAP};
use crate::error::{Error, Result};
use crate::matcore::{Rational, RationalMatrix};
use crate::maybee;
use crate::mclass;

/// Order cap for exhaustive sign-pattern work.
pub const MAX_EXHAUSTIVE_ORDER: usize = 8;
/// Order cap for randomized generation.
pub const MAX_RANDOM_ORDER: usize = 12;
/// Cap on the number of in-band off-diagonal positions a pattern
/// enumeration may cover (2^positions patterns are streamed).
pub const MAX_PATTERN_POSITIONS: usize = 28;

/// How off-diagonal sign patterns are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignMode {
    #[serde(rename = "RANDOM")]
    Random,
    #[serde(rename = "EXHAUSTIVE")]
    Exhaustive,
}

/// Parameters for the seeded matrix generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub order: usize,
    /// (lower, upper) band widths the off-diagonal entries may occupy.
    pub band: (usize, usize),
    pub sign_pattern_mode: SignMode,
    /// Inclusive interval of absolute values for off-diagonal entries.
    pub magnitude_range: (i64, i64),
    /// Probability that an in-band off-diagonal entry is zero.
    pub zero_probability: f64,
    /// Added to each row's absolute off-diagonal sum to form the diagonal.
    pub dominance_slack: Rational,
    pub seed: u64,
}

impl GeneratorSpec {
    /// Spec with the usual defaults: magnitudes 1..=3, half the in-band
    /// entries zero, slack 1.
    pub fn new(order: usize, band: (usize, usize), seed: u64) -> Self {
        GeneratorSpec {
            order,
            band,
            sign_pattern_mode: SignMode::Random,
            magnitude_range: (1, 3),
            zero_probability: 0.5,
            dominance_slack: Rational::one(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let cap = match self.sign_pattern_mode {
            SignMode::Exhaustive => MAX_EXHAUSTIVE_ORDER,
            SignMode::Random => MAX_RANDOM_ORDER,
        };
        if self.order == 0 {
            return Err(Error::SizeTooSmall { order: 0, min: 1 });
        }
        if self.order > cap {
            return Err(Error::SizeLimit {
                order: self.order,
                max: cap,
            });
        }
        if self.magnitude_range.0 < 1 || self.magnitude_range.0 > self.magnitude_range.1 {
            return Err(Error::InternalInconsistency(
                "magnitude range must satisfy 1 <= lo <= hi".to_string(),
            ));
        }
        if !(0.0..=1.0).contains(&self.zero_probability) {
            return Err(Error::InternalInconsistency(
                "zero probability must lie in [0, 1]".to_string(),
            ));
        }
        if !self.dominance_slack.is_positive() {
            return Err(Error::InternalInconsistency(
                "dominance slack must be positive".to_string(),
            ));
        }
        Ok(())
    }

    fn in_band(&self, i: usize, j: usize) -> bool {
        if j < i {
            i - j <= self.band.0
        } else {
            j - i <= self.band.1
        }
    }
}

fn dominance_lift(n: usize, off: &[Vec<Rational>], slack: &Rational) -> RationalMatrix {
    RationalMatrix::from_fn(n, |i, j| {
        if i == j {
            let mut sum = slack.clone();
            for (k, e) in off[i].iter().enumerate() {
                if k != i {
                    sum += &e.abs();
                }
            }
            sum
        } else {
            off[i][j].clone()
        }
    })
}

fn draw_off_diagonals(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    let n = spec.order;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j || !spec.in_band(i, j) || rng.gen_bool(spec.zero_probability) {
                        Rational::zero()
                    } else {
                        let mag = rng.gen_range(spec.magnitude_range.0..=spec.magnitude_range.1);
                        Rational::from_integer(-mag)
                    }
                })
                .collect()
        })
        .collect()
}

/// Seeded random M-matrix: nonpositive in-band off-diagonal entries,
/// diagonal lifted by the dominance slack. The result is re-verified
/// through [`mclass::classify`]; a verification failure would be a bug and
/// is reported as an internal inconsistency.
pub fn random_m_matrix(spec: &GeneratorSpec) -> Result<RationalMatrix> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let off = draw_off_diagonals(spec, &mut rng);
    let a = dominance_lift(spec.order, &off, &spec.dominance_slack);
    if !mclass::is_m_matrix(&a)? {
        return Err(Error::InternalInconsistency(
            "dominance-lifted candidate failed the M-matrix verification".to_string(),
        ));
    }
    Ok(a)
}

/// Seeded random matrix with signed in-band entries (diagonal included),
/// rejection-sampled until nonsingular. Used for populations that must not
/// be restricted to M-matrices.
pub fn random_nonsingular_matrix(spec: &GeneratorSpec, max_tries: usize) -> Result<RationalMatrix> {
    spec.validate()?;
    let n = spec.order;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..max_tries {
        let a = RationalMatrix::from_fn(n, |i, j| {
            if i != j && !spec.in_band(i, j) {
                Rational::zero()
            } else if rng.gen_bool(spec.zero_probability) {
                Rational::zero()
            } else {
                let mag = rng.gen_range(spec.magnitude_range.0..=spec.magnitude_range.1);
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                Rational::from_integer(sign * mag)
            }
        });
        if !a.determinant().is_zero() {
            return Ok(a);
        }
    }
    Err(Error::InternalInconsistency(
        "rejection sampling found no nonsingular matrix".to_string(),
    ))
}

/// Seeded random tridiagonal M-matrix shaped to satisfy or violate the
/// no-consecutive-nonzeros condition. Violation needs two adjacent nonzero
/// band entries, so the order must be at least 3.
pub fn random_tridiagonal_m_matrix(
    spec: &GeneratorSpec,
    satisfy_condition: bool,
) -> Result<RationalMatrix> {
    let spec = GeneratorSpec {
        band: (1, 1),
        ..spec.clone()
    };
    spec.validate()?;
    let n = spec.order;
    if n < 3 {
        return Err(Error::SizeTooSmall { order: n, min: 3 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut off = draw_off_diagonals(&spec, &mut rng);
    if satisfy_condition {
        // Zero out the later entry of each consecutive nonzero pair.
        for i in 1..n - 1 {
            if !off[i][i - 1].is_zero() && !off[i + 1][i].is_zero() {
                off[i + 1][i] = Rational::zero();
            }
            if !off[i - 1][i].is_zero() && !off[i][i + 1].is_zero() {
                off[i][i + 1] = Rational::zero();
            }
        }
    } else {
        let has_violation = (1..n - 1).any(|i| {
            (!off[i][i - 1].is_zero() && !off[i + 1][i].is_zero())
                || (!off[i - 1][i].is_zero() && !off[i][i + 1].is_zero())
        });
        if !has_violation {
            let mag = rng.gen_range(spec.magnitude_range.0..=spec.magnitude_range.1);
            off[1][0] = Rational::from_integer(-mag);
            let mag = rng.gen_range(spec.magnitude_range.0..=spec.magnitude_range.1);
            off[2][1] = Rational::from_integer(-mag);
        }
    }
    let a = dominance_lift(n, &off, &spec.dominance_slack);
    if !mclass::is_m_matrix(&a)? {
        return Err(Error::InternalInconsistency(
            "dominance-lifted candidate failed the M-matrix verification".to_string(),
        ));
    }
    let (sub, sup) = banded::check_condition_tri(&a)?;
    if (sub.holds && sup.holds) != satisfy_condition {
        return Err(Error::InternalInconsistency(
            "tridiagonal generator produced the wrong condition class".to_string(),
        ));
    }
    Ok(a)
}

/// In-band off-diagonal positions in row-major order.
pub fn band_positions(order: usize, band: (usize, usize)) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..order {
        for j in 0..order {
            if i == j {
                continue;
            }
            let within = if j < i {
                i - j <= band.0
            } else {
                j - i <= band.1
            };
            if within {
                out.push((i, j));
            }
        }
    }
    out
}

/// One sign pattern: the selected positions carry negative entries, all
/// other off-diagonal positions are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandSignPattern {
    pub order: usize,
    /// Index in the deterministic enumeration (the selection bitmask).
    pub index: u64,
    pub negatives: Vec<(usize, usize)>,
}

/// Streams every subset of the in-band off-diagonal positions as a sign
/// pattern, in ascending bitmask order. Never materialized as a whole.
#[derive(Debug, Clone)]
pub struct SignPatternIter {
    order: usize,
    positions: Vec<(usize, usize)>,
    next: u64,
    total: u64,
}

impl SignPatternIter {
    pub fn pattern_count(&self) -> u64 {
        self.total
    }

    /// Jumps the cursor, for resuming an interrupted scan.
    pub fn skip_to(&mut self, index: u64) {
        self.next = index.min(self.total);
    }
}

impl Iterator for SignPatternIter {
    type Item = BandSignPattern;

    fn next(&mut self) -> Option<BandSignPattern> {
        if self.next >= self.total {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let negatives = self
            .positions
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &p)| p)
            .collect();
        Some(BandSignPattern {
            order: self.order,
            index: mask,
            negatives,
        })
    }
}

/// Enumerates all `2^positions` in-band sign patterns for the given order
/// and band.
pub fn enumerate_sign_patterns(order: usize, band: (usize, usize)) -> Result<SignPatternIter> {
    if order > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::SizeLimit {
            order,
            max: MAX_EXHAUSTIVE_ORDER,
        });
    }
    let positions = band_positions(order, band);
    if positions.len() > MAX_PATTERN_POSITIONS {
        return Err(Error::SizeLimit {
            order: positions.len(),
            max: MAX_PATTERN_POSITIONS,
        });
    }
    let total = 1u64 << positions.len();
    Ok(SignPatternIter {
        order,
        positions,
        next: 0,
        total,
    })
}

/// Materializes a sign pattern as a unit-magnitude M-matrix: selected
/// positions get -1, the diagonal is the row's negative count plus the
/// slack.
pub fn matrix_from_pattern(pattern: &BandSignPattern, slack: &Rational) -> RationalMatrix {
    let n = pattern.order;
    RationalMatrix::from_fn(n, |i, j| {
        if i == j {
            let count = pattern.negatives.iter().filter(|&&(r, _)| r == i).count();
            Rational::from_integer(count as i64) + slack
        } else if pattern.negatives.contains(&(i, j)) {
            -Rational::one()
        } else {
            Rational::zero()
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HuntMode {
    #[serde(rename = "EXHAUSTIVE")]
    Exhaustive,
    #[serde(rename = "RANDOM")]
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HuntStatus {
    #[serde(rename = "COUNTEREXAMPLE_FOUND")]
    CounterexampleFound,
    #[serde(rename = "EXHAUSTED")]
    Exhausted,
    #[serde(rename = "BUDGET_REACHED")]
    BudgetReached,
}

/// Evidence for a found counterexample: the offending inverse entry (more
/// than two bands off the diagonal) and a directed path witnessing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(
        serialize_with = "crate::serde1b::ser_index",
        deserialize_with = "crate::serde1b::de_index"
    )]
    pub row: usize,
    #[serde(
        serialize_with = "crate::serde1b::ser_index",
        deserialize_with = "crate::serde1b::de_index"
    )]
    pub col: usize,
    pub value: Rational,
    pub path: Path,
}

/// Final state of a hunt over one (order, mode, band, magnitude) slice.
/// An `Exhausted` outcome certifies only the slice described here, nothing
/// beyond it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: HuntStatus,
    pub order: usize,
    pub mode: HuntMode,
    pub band: (usize, usize),
    /// Off-diagonal magnitudes searched: fixed 1 for exhaustive mode, the
    /// spec's range for random mode.
    pub magnitude_range: (i64, i64),
    pub seed: u64,
    /// Candidates examined so far (cumulative across resumed runs).
    pub examined: u64,
    /// Next enumeration index to examine; equals the pattern total once
    /// exhausted.
    pub next_index: u64,
    /// Total patterns in the slice (exhaustive mode only).
    pub patterns_total: Option<u64>,
    /// Enumeration index of the counterexample, when one was found.
    pub found_index: Option<u64>,
    pub candidate: Option<RationalMatrix>,
    pub certificate: Option<Certificate>,
}

/// Resumable cursor for a hunt, serialized to the checkpoint file by the
/// CLI. Once the hunt reaches a terminal state the final outcome is stored
/// inline, so re-running against the same checkpoint is idempotent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuntCheckpoint {
    pub order: usize,
    pub mode: HuntMode,
    pub band: (usize, usize),
    pub seed: u64,
    pub next_index: u64,
    pub outcome: Option<SearchOutcome>,
}

impl HuntCheckpoint {
    pub fn matches(&self, order: usize, mode: HuntMode, seed: u64) -> bool {
        self.order == order && self.mode == mode && self.band == (2, 2) && self.seed == seed
    }
}

/// Re-verifies a counterexample end to end, through independent routes:
/// the candidate classifies as an M-matrix, is pentadiagonal, satisfies
/// all six conditions, its directly-computed inverse is nonzero at the
/// certified position (more than two bands off the diagonal), the path-sum
/// formula reproduces the same value, and the certified witness path
/// really is a path of D(A) between the certified endpoints.
pub fn verify_counterexample(a: &RationalMatrix, cert: &Certificate) -> Result<()> {
    let fail = |msg: &str| Err(Error::InternalInconsistency(msg.to_string()));
    if !mclass::is_m_matrix(a)? {
        return fail("certificate candidate is not an M-matrix");
    }
    if !banded::is_pentadiagonal(a) {
        return fail("certificate candidate is not pentadiagonal");
    }
    let reports = banded::check_conditions_penta(a)?;
    if !reports.iter().all(|r| r.holds) {
        return fail("certificate candidate violates a band condition");
    }
    if cert.row.abs_diff(cert.col) <= 2 {
        return fail("certified entry is inside the pentadiagonal band");
    }
    let inv = a.inverse_direct()?;
    if inv.get(cert.row, cert.col) != &cert.value || cert.value.is_zero() {
        return fail("direct inverse does not match the certified value");
    }
    let (by_paths, _) = maybee::inverse_entry(a, cert.row, cert.col, DEFAULT_PATH_CAP)?;
    if by_paths != cert.value {
        return fail("path-sum inverse does not match the certified value");
    }
    let g = Digraph::of_matrix(a);
    if !g.reachable(cert.row, cert.col) {
        return fail("no path witnesses the certified entry");
    }
    let revalidated = Path::new(cert.path.vertices().to_vec(), &g)?;
    if revalidated.first() != cert.row || revalidated.last() != cert.col {
        return fail("witness path endpoints do not match the certified entry");
    }
    Ok(())
}

/// Inspects one candidate; returns the certificate if it is a
/// counterexample.
fn inspect_candidate(a: &RationalMatrix) -> Result<Option<Certificate>> {
    if !banded::is_pentadiagonal(a) {
        return Ok(None);
    }
    let reports = banded::check_conditions_penta(a)?;
    if !reports.iter().all(|r| r.holds) {
        return Ok(None);
    }
    let inv = a.inverse_direct()?;
    if banded::is_pentadiagonal(&inv) {
        return Ok(None);
    }
    let n = a.order();
    let mut found = None;
    'scan: for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) > 2 && !inv.get(i, j).is_zero() {
                found = Some((i, j));
                break 'scan;
            }
        }
    }
    let (row, col) = found.ok_or_else(|| {
        Error::InternalInconsistency("non-pentadiagonal inverse with no out-of-band entry".into())
    })?;
    let g = Digraph::of_matrix(a);
    let path = g
        .enumerate_simple_paths(row, col, DEFAULT_PATH_CAP)?
        .into_iter()
        .next()
        .ok_or_else(|| {
            Error::InternalInconsistency("nonzero inverse entry with no witnessing path".into())
        })?;
    let cert = Certificate {
        row,
        col,
        value: inv.get(row, col).clone(),
        path,
    };
    verify_counterexample(a, &cert)?;
    Ok(Some(cert))
}

fn mix_seed(seed: u64, index: u64) -> u64 {
    // splitmix64-style stream derivation
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Scans pentadiagonal M-matrices that satisfy all six conditions for one
/// whose inverse is not pentadiagonal. `budget` caps the cumulative number
/// of candidates examined (a resumed run continues the count). The scan
/// order is deterministic, so the reported counterexample, if any, is
/// always the first in enumeration order. `progress` receives
/// `(examined, patterns_total)` periodically.
pub fn hunt_converse_penta(
    order: usize,
    budget: u64,
    mode: HuntMode,
    spec: &GeneratorSpec,
    resume: Option<&HuntCheckpoint>,
    mut progress: impl FnMut(u64, Option<u64>),
) -> Result<SearchOutcome> {
    if order < 4 {
        return Err(Error::SizeTooSmall { order, min: 4 });
    }
    let cap = match mode {
        HuntMode::Exhaustive => MAX_EXHAUSTIVE_ORDER,
        HuntMode::Random => MAX_RANDOM_ORDER,
    };
    if order > cap {
        return Err(Error::SizeLimit { order, max: cap });
    }
    let spec = GeneratorSpec {
        order,
        band: (2, 2),
        ..spec.clone()
    };
    spec.validate()?;

    let mut start = 0;
    if let Some(cp) = resume {
        if !cp.matches(order, mode, spec.seed) {
            return Err(Error::InternalInconsistency(
                "checkpoint does not match the requested hunt".to_string(),
            ));
        }
        if let Some(outcome) = &cp.outcome {
            return Ok(outcome.clone());
        }
        start = cp.next_index;
    }

    let magnitude_range = match mode {
        HuntMode::Exhaustive => (1, 1),
        HuntMode::Random => spec.magnitude_range,
    };
    let seed = spec.seed;
    let outcome_base = move |status: HuntStatus,
                             examined: u64,
                             next_index: u64,
                             total: Option<u64>,
                             found: Option<(u64, RationalMatrix, Certificate)>| {
        SearchOutcome {
            status,
            order,
            mode,
            band: (2, 2),
            magnitude_range,
            seed,
            examined,
            next_index,
            patterns_total: total,
            found_index: found.as_ref().map(|(i, _, _)| *i),
            candidate: found.as_ref().map(|(_, a, _)| a.clone()),
            certificate: found.map(|(_, _, c)| c),
        }
    };

    match mode {
        HuntMode::Exhaustive => {
            let mut patterns = enumerate_sign_patterns(order, (2, 2))?;
            let total = patterns.pattern_count();
            patterns.skip_to(start);
            let mut examined = start;
            for pattern in patterns {
                if examined >= budget {
                    return Ok(outcome_base(
                        HuntStatus::BudgetReached,
                        examined,
                        pattern.index,
                        Some(total),
                        None,
                    ));
                }
                let a = matrix_from_pattern(&pattern, &spec.dominance_slack);
                if !mclass::is_m_matrix(&a)? {
                    return Err(Error::InternalInconsistency(
                        "pattern lift failed the M-matrix verification".to_string(),
                    ));
                }
                examined += 1;
                if let Some(cert) = inspect_candidate(&a)? {
                    return Ok(outcome_base(
                        HuntStatus::CounterexampleFound,
                        examined,
                        examined,
                        Some(total),
                        Some((pattern.index, a, cert)),
                    ));
                }
                if examined % 256 == 0 {
                    progress(examined, Some(total));
                }
            }
            progress(examined, Some(total));
            Ok(outcome_base(
                HuntStatus::Exhausted,
                examined,
                total,
                Some(total),
                None,
            ))
        }
        HuntMode::Random => {
            let mut index = start;
            loop {
                if index >= budget {
                    return Ok(outcome_base(
                        HuntStatus::BudgetReached,
                        index,
                        index,
                        None,
                        None,
                    ));
                }
                let candidate_spec = GeneratorSpec {
                    seed: mix_seed(seed, index),
                    ..spec.clone()
                };
                let a = random_m_matrix(&candidate_spec)?;
                index += 1;
                if let Some(cert) = inspect_candidate(&a)? {
                    return Ok(outcome_base(
                        HuntStatus::CounterexampleFound,
                        index,
                        index,
                        None,
                        Some((index - 1, a, cert)),
                    ));
                }
                if index % 256 == 0 {
                    progress(index, None);
                }
            }
        }
    }
}

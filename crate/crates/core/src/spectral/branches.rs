//! Splitting a sorted spectrum into one or two interleaved smooth sequences.

use serde::Serialize;

use crate::error::{Error, Result};

/// Shortest run for which both halves have a second difference.
pub const MIN_RUN: usize = 6;

/// Default `M₀/M₁` ratio above which an interval counts as two branches.
pub const DEFAULT_BRANCH_THRESHOLD: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BranchCount {
    One,
    Two,
    /// Fewer than [`MIN_RUN`] eigenvalues in the interval.
    Indeterminate,
}

impl BranchCount {
    pub fn as_str(&self) -> &'static str {
        match self {
            BranchCount::One => "1",
            BranchCount::Two => "2",
            BranchCount::Indeterminate => "indeterminate",
        }
    }

    pub fn as_number(&self) -> Option<u8> {
        match self {
            BranchCount::One => Some(1),
            BranchCount::Two => Some(2),
            BranchCount::Indeterminate => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchInterval {
    pub lo: f64,
    pub hi: f64,
    pub count: BranchCount,
    /// `M₀/M₁`, absent when indeterminate.
    pub ratio: Option<f64>,
    pub n_eigs: usize,
}

fn max_second_difference(v: &[f64]) -> f64 {
    v.windows(3)
        .map(|w| (w[2] - 2.0 * w[1] + w[0]).abs())
        .fold(0.0, f64::max)
}

/// `M₀/M₁` for a sorted run: `M₀` is the largest second difference of the
/// whole run, `M₁` the largest over its even- and odd-indexed halves. Both are
/// floored at `1e−9 · range` so flat or arithmetic runs give 1.
pub fn interleaving_ratio(run: &[f64]) -> Result<f64> {
    if run.len() < MIN_RUN {
        return Err(Error::TooFewEigenvalues);
    }
    let even: Vec<f64> = run.iter().step_by(2).copied().collect();
    let odd: Vec<f64> = run.iter().skip(1).step_by(2).copied().collect();
    let m0 = max_second_difference(run);
    let m1 = max_second_difference(&even).max(max_second_difference(&odd));
    let range = run[run.len() - 1] - run[0];
    let floor = 1e-9 * range.abs().max(f64::MIN_POSITIVE);
    Ok(m0.max(floor) / m1.max(floor))
}

/// One or two branches for a single sorted run of eigenvalues.
pub fn branch_count(run: &[f64], threshold: f64) -> Result<BranchCount> {
    let r = interleaving_ratio(run)?;
    Ok(if r >= threshold {
        BranchCount::Two
    } else {
        BranchCount::One
    })
}

/// Classifies each open interval between consecutive critical values.
pub fn detect_branches(eigs: &[f64], critical: &[f64], threshold: f64) -> Vec<BranchInterval> {
    let mut sorted = eigs.to_vec();
    sorted.sort_by(f64::total_cmp);
    critical
        .windows(2)
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            let run: Vec<f64> = sorted
                .iter()
                .copied()
                .filter(|&x| x > lo && x < hi)
                .collect();
            let (count, ratio) = match interleaving_ratio(&run) {
                Ok(r) if r >= threshold => (BranchCount::Two, Some(r)),
                Ok(r) => (BranchCount::One, Some(r)),
                Err(_) => (BranchCount::Indeterminate, None),
            };
            BranchInterval {
                lo,
                hi,
                count,
                ratio,
                n_eigs: run.len(),
            }
        })
        .collect()
}

/// Index of the interval holding `x`, if any.
pub fn interval_of(x: f64, intervals: &[BranchInterval]) -> Option<usize> {
    intervals.iter().position(|iv| x > iv.lo && x < iv.hi)
}

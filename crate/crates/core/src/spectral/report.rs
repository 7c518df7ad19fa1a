//! Spectra of `φ(X)` and sweeps over `μ`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rep::{construct_loop_rep, construct_string_rep, LoopSpec, Representation, StringSpec};
use crate::surface::critical_values_torus_sphere;

use super::branches::{detect_branches, interval_of, BranchInterval, DEFAULT_BRANCH_THRESHOLD};
use super::eigen::{hermitian_eigenvalues_with, EigenSolver, NalgebraSolver};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    /// `λ_{i+1} − λ_i`.
    pub gaps: Vec<f64>,
    pub intervals: Vec<BranchInterval>,
    pub mu: f64,
    pub c: f64,
    pub n: usize,
}

impl SpectrumReport {
    /// Branch counts across intervals, e.g. `[1, 2, 1]`; `None` marks an
    /// indeterminate interval.
    pub fn branch_pattern(&self) -> Vec<Option<u8>> {
        self.intervals
            .iter()
            .map(|iv| iv.count.as_number())
            .collect()
    }

    /// Interval index per eigenvalue.
    pub fn interval_ids(&self) -> Vec<Option<usize>> {
        self.eigenvalues
            .iter()
            .map(|&x| interval_of(x, &self.intervals))
            .collect()
    }
}

pub fn position_spectrum(rep: &Representation) -> Result<SpectrumReport> {
    position_spectrum_with(rep, DEFAULT_BRANCH_THRESHOLD, &NalgebraSolver)
}

pub fn position_spectrum_with(
    rep: &Representation,
    threshold: f64,
    solver: &dyn EigenSolver,
) -> Result<SpectrumReport> {
    let eigenvalues = hermitian_eigenvalues_with(&rep.x(), solver)?;
    let gaps = eigenvalues.windows(2).map(|w| w[1] - w[0]).collect();
    let intervals = if rep.c > 0.0 {
        let crit = critical_values_torus_sphere(rep.mu, rep.c)?;
        detect_branches(&eigenvalues, &crit, threshold)
    } else {
        Vec::new()
    };
    Ok(SpectrumReport {
        eigenvalues,
        gaps,
        intervals,
        mu: rep.mu,
        c: rep.c,
        n: rep.dim(),
    })
}

/// The `N`-dimensional representation used in sweeps: a string when
/// `μ/√c ≤ 1`, otherwise a loop with `θ = π/N` and the given `β`.
pub fn sweep_representation(mu: f64, c: f64, n: usize, beta: f64) -> Result<Representation> {
    if !(c > 0.0) {
        return Err(Error::invalid("c", "must be positive"));
    }
    if mu / c.sqrt() <= 1.0 {
        construct_string_rep(&StringSpec::solve(n, mu, c)?)
    } else {
        construct_loop_rep(&LoopSpec::new(n, 1, beta), mu, c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepEntry {
    pub mu: f64,
    pub result: std::result::Result<SpectrumReport, Error>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SweepTable {
    pub entries: Vec<SweepEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepParams {
    pub c: f64,
    pub n: usize,
    pub beta: f64,
    pub threshold: f64,
    /// Worker threads; results keep input order either way.
    pub workers: usize,
}

impl SweepParams {
    pub fn new(c: f64, n: usize) -> Self {
        SweepParams {
            c,
            n,
            beta: 0.0,
            threshold: DEFAULT_BRANCH_THRESHOLD,
            workers: 1,
        }
    }
}

fn sweep_one(mu: f64, p: &SweepParams) -> SweepEntry {
    let result = sweep_representation(mu, p.c, p.n, p.beta)
        .and_then(|rep| position_spectrum_with(&rep, p.threshold, &NalgebraSolver));
    SweepEntry { mu, result }
}

pub fn sweep_mu(mu_values: &[f64], p: &SweepParams) -> SweepTable {
    let workers = p.workers.max(1).min(mu_values.len().max(1));
    let entries = if workers == 1 {
        mu_values.iter().map(|&mu| sweep_one(mu, p)).collect()
    } else {
        let chunk = mu_values.len().div_ceil(workers);
        std::thread::scope(|s| {
            let handles: Vec<_> = mu_values
                .chunks(chunk)
                .map(|part| {
                    s.spawn(move || part.iter().map(|&mu| sweep_one(mu, p)).collect::<Vec<_>>())
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };
    SweepTable { entries }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub const CSV_HEADER: &str = "mu,i,lambda,gap,interval,branches";

/// Rows of one spectrum: `i` counts from 1, the last gap is empty and
/// eigenvalues outside every interval get an empty interval cell.
pub fn spectrum_csv_rows(r: &SpectrumReport, out: &mut String) {
    let ids = r.interval_ids();
    for (i, &lam) in r.eigenvalues.iter().enumerate() {
        let gap = r.gaps.get(i).map(|&g| fmt_f64(g)).unwrap_or_default();
        let (iv, br) = match ids[i] {
            Some(k) => (k.to_string(), r.intervals[k].count.as_str().to_string()),
            None => (String::new(), String::new()),
        };
        let _ = writeln!(
            out,
            "{},{},{},{gap},{iv},{br}",
            fmt_f64(r.mu),
            i + 1,
            fmt_f64(lam)
        );
    }
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            match &e.result {
                Ok(r) => spectrum_csv_rows(r, &mut out),
                Err(err) => {
                    let msg = err.to_string().replace([',', '\n'], ";");
                    let _ = writeln!(out, "{},,,,,error: {msg}", fmt_f64(e.mu));
                }
            }
        }
        out
    }

    pub fn data_rows(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.result.as_ref().map_or(1, |r| r.eigenvalues.len()))
            .sum()
    }
}

/// Width of the middle interval `(−√(μ−√c), √(μ−√c))`, zero when absent.
pub fn two_branch_width(mu: f64, c: f64) -> f64 {
    let inner = mu - c.sqrt();
    if inner > 0.0 {
        2.0 * inner.sqrt()
    } else {
        0.0
    }
}

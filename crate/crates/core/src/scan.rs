//! Sweeps of the decision procedure over the `(n, λ)` plane.

use std::cmp::Ordering;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decision::{decide, threshold, DecideConfig, Decision, Mode, Verdict};
use crate::error::{Error, Result};
use crate::geometry::ConeSpace;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: u32,
    pub lambda: f64,
    #[serde(flatten)]
    pub decision: Decision,
    pub lambda_star: f64,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScanConfig {
    pub mode: Mode,
    #[serde(flatten)]
    pub decide: DecideConfig,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Record per-point wall time. Off by default so that output is
    /// reproducible byte for byte.
    pub timing: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Certified,
            decide: DecideConfig::default(),
            threads: None,
            timing: false,
        }
    }
}

/// `count` evenly spaced values on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
            .collect(),
    }
}

fn evaluate(n: u32, lambda: f64, star: f64, cfg: &ScanConfig) -> ScanRecord {
    let start = Instant::now();
    let decision = match ConeSpace::new(n, lambda) {
        Ok(space) => decide(&space, cfg.mode, &cfg.decide),
        Err(e) => Decision {
            verdict: Verdict::Undetermined,
            certificate: None,
            margin: 0.0,
            diagnostics: Some(e.to_string()),
        },
    };
    let wall_time_ms = if cfg.timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    ScanRecord {
        n,
        lambda,
        decision,
        lambda_star: star,
        wall_time_ms,
    }
}

fn record_order(a: &ScanRecord, b: &ScanRecord) -> Ordering {
    a.n.cmp(&b.n).then(a.lambda.total_cmp(&b.lambda))
}

/// Decides every `(n, λ)` pair. Points that fail validation are recorded as
/// undetermined with a diagnostic; the output is sorted by `(n, λ)`.
pub fn scan(n_range: &[u32], lambda_grid: &[f64], cfg: &ScanConfig) -> Result<Vec<ScanRecord>> {
    let mut jobs = Vec::with_capacity(n_range.len() * lambda_grid.len());
    for &n in n_range {
        let star = threshold(n)?;
        jobs.extend(lambda_grid.iter().map(|&l| (n, l, star)));
    }
    let run = || {
        jobs.par_iter()
            .map(|&(n, l, star)| evaluate(n, l, star, cfg))
            .collect::<Vec<_>>()
    };
    let mut records = match cfg.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Precondition(format!("cannot build worker pool: {e}")))?
            .install(run),
        None => run(),
    };
    records.sort_by(record_order);
    Ok(records)
}

/// Midpoint between the largest non-minimizing and the smallest minimizing
/// `λ` for dimension `n`.
pub fn empirical_threshold(records: &[ScanRecord], n: u32) -> Option<f64> {
    let of_n = || records.iter().filter(move |r| r.n == n);
    let last_not = of_n()
        .filter(|r| r.decision.verdict == Verdict::NotMinimizing)
        .map(|r| r.lambda)
        .max_by(f64::total_cmp)?;
    let first_min = of_n()
        .filter(|r| r.decision.verdict == Verdict::Minimizing && r.lambda > last_not)
        .map(|r| r.lambda)
        .min_by(f64::total_cmp)?;
    Some(0.5 * (last_not + first_min))
}

/// True when, for dimension `n`, no minimizing point lies below a
/// non-minimizing one.
pub fn is_monotone(records: &[ScanRecord], n: u32) -> bool {
    let mut seen_min = false;
    let mut sorted: Vec<&ScanRecord> = records.iter().filter(|r| r.n == n).collect();
    sorted.sort_by(|a, b| record_order(a, b));
    for r in sorted {
        match r.decision.verdict {
            Verdict::Minimizing => seen_min = true,
            Verdict::NotMinimizing if seen_min => return false,
            _ => {}
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_gives_no_records() {
        assert!(scan(&[3], &[], &ScanConfig::default()).unwrap().is_empty());
        assert!(scan(&[1], &[0.5], &ScanConfig::default()).is_err());
    }

    #[test]
    fn formula_thresholds() {
        let cfg = ScanConfig {
            mode: Mode::FormulaOnly,
            ..ScanConfig::default()
        };
        let grid = linspace(0.5, 1.0, 501);
        let records = scan(&[2, 3, 4, 5, 6], &grid, &cfg).unwrap();
        for (n, expected) in [(2, 1.0), (3, 0.94281), (4, 0.86603), (5, 0.8), (6, 0.74536)] {
            let t = empirical_threshold(&records, n).unwrap();
            assert!((t - expected).abs() <= 1e-3, "n={n}: {t}");
            assert!(is_monotone(&records, n));
        }
    }

    #[test]
    fn order_ignores_parallelism() {
        let grid = linspace(0.9, 0.99, 37);
        let one = ScanConfig {
            threads: Some(1),
            ..ScanConfig::default()
        };
        let four = ScanConfig {
            threads: Some(4),
            ..ScanConfig::default()
        };
        let a = scan(&[4, 3], &grid, &one).unwrap();
        let b = scan(&[3, 4], &grid, &four).unwrap();
        assert_eq!(a, b);
        assert!(a
            .windows(2)
            .all(|w| record_order(&w[0], &w[1]) != Ordering::Greater));
    }

    #[test]
    fn invalid_points_are_recorded() {
        let records = scan(&[3], &[0.9, 1.5], &ScanConfig::default()).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[1].decision.verdict, Verdict::Undetermined);
        assert!(records[1].decision.diagnostics.is_some());
    }
}

//! Grid search over `(α, δ)` for an exponential competitor beating the cone.

use serde::{Deserialize, Serialize};

use super::sec5::{sec5_bound_log, Sec5Value};
use crate::geometry::ConeSpace;

pub const ALPHA_RANGE: (f64, f64) = (1e-4, 0.9);
pub const ALPHA_POINTS: usize = 12;
/// Range of `-ln δ`.
pub const NEG_LN_DELTA_RANGE: (f64, f64) = (1.203_972_804_325_936, 1e8);
pub const DELTA_POINTS: usize = 24;
pub const REFINE_ROUNDS: usize = 2;
const REFINE_POINTS: usize = 5;

pub const DEFAULT_BUDGET: usize =
    ALPHA_POINTS * DELTA_POINTS + REFINE_ROUNDS * REFINE_POINTS * REFINE_POINTS;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchPoint {
    pub alpha: f64,
    pub neg_ln_delta: f64,
    pub bound: Sec5Value,
}

impl SearchPoint {
    /// `δ`, which underflows to zero far enough out.
    pub fn delta(&self) -> f64 {
        (-self.neg_ln_delta).exp()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub best: Option<SearchPoint>,
    pub found: bool,
    pub evaluations: usize,
}

impl SearchOutcome {
    /// The best point when it beats the cone.
    pub fn competitor(&self) -> Option<&SearchPoint> {
        self.best.as_ref().filter(|_| self.found)
    }
}

fn better(a: &SearchPoint, b: &SearchPoint) -> bool {
    let (sa, sb) = (a.bound.score(), b.bound.score());
    sa.0 & !sb.0 || (sa.0 == sb.0 && sa.1 > sb.1)
}

/// Minimizes the closed-form bound over a grid log-spaced in `α` and in
/// `-ln δ`, then refines twice on a local 5x5 grid around the incumbent.
/// At most `budget` bound evaluations are spent.
pub fn competitor_search(space: &ConeSpace, budget: usize) -> SearchOutcome {
    let la = (ALPHA_RANGE.0.ln(), ALPHA_RANGE.1.ln());
    let ld = (NEG_LN_DELTA_RANGE.0.ln(), NEG_LN_DELTA_RANGE.1.ln());
    let step_a = (la.1 - la.0) / (ALPHA_POINTS - 1) as f64;
    let step_d = (ld.1 - ld.0) / (DELTA_POINTS - 1) as f64;

    let mut evaluations = 0;
    let mut best: Option<SearchPoint> = None;
    let mut visit = |x: f64, y: f64, best: &mut Option<SearchPoint>| {
        if evaluations >= budget {
            return;
        }
        evaluations += 1;
        let alpha = x.exp();
        let neg_ln_delta = y.exp();
        if let Ok(bound) = sec5_bound_log(space, neg_ln_delta, alpha) {
            let p = SearchPoint {
                alpha,
                neg_ln_delta,
                bound,
            };
            if best.as_ref().is_none_or(|b| better(&p, b)) {
                *best = Some(p);
            }
        }
    };

    for i in 0..ALPHA_POINTS {
        for j in 0..DELTA_POINTS {
            visit(
                la.0 + step_a * i as f64,
                ld.0 + step_d * j as f64,
                &mut best,
            );
        }
    }
    let (mut ha, mut hd) = (step_a, step_d);
    for _ in 0..REFINE_ROUNDS {
        let Some(centre) = best else { break };
        let (cx, cy) = (centre.alpha.ln(), centre.neg_ln_delta.ln());
        let half = (REFINE_POINTS / 2) as f64;
        for i in 0..REFINE_POINTS {
            for j in 0..REFINE_POINTS {
                let x = (cx + ha * (i as f64 - half) / half).clamp(la.0, la.1);
                let y = (cy + hd * (j as f64 - half) / half).clamp(ld.0, ld.1);
                visit(x, y, &mut best);
            }
        }
        ha *= 0.5;
        hd *= 0.5;
    }
    let found = best.is_some_and(|b| b.bound.beats_cone());
    SearchOutcome {
        best,
        found,
        evaluations,
    }
}

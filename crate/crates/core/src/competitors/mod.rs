//! Explicit competitor surfaces: the catenoid cap and disk for `n = 2`,
//! and the exponential profile for general `n`.

mod catenoid;
mod disk;
mod search;
mod sec5;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::ConeSpace;
use crate::quadrature::QuadratureConfig;

pub use catenoid::{catenoid_area_closed_form, solve_catenoid, CatenoidParams};
pub use disk::{disk_profile, DiskCompetitor};
pub use search::{
    competitor_search, SearchOutcome, SearchPoint, ALPHA_POINTS, ALPHA_RANGE, DEFAULT_BUDGET,
    DELTA_POINTS, NEG_LN_DELTA_RANGE, REFINE_ROUNDS,
};
pub use sec5::{
    g_half_pi, sec5_area_numeric, sec5_area_numeric_log, sec5_bound, sec5_bound_log,
    Sec5Competitor, Sec5Value,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompetitorVerdict {
    BeatsCone,
    NoImprovement,
}

/// Summary of the best exponential competitor for one cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompetitorReport {
    pub n: u32,
    pub lambda: f64,
    pub delta: f64,
    pub ln_delta: f64,
    pub alpha: f64,
    /// Closed-form bound on `S`, rounded to double precision.
    pub bound: f64,
    /// `S` by quadrature, when requested.
    pub numeric: Option<f64>,
    /// Scaled deficit `n(1/n - bound)/δ^2`; positive when the competitor
    /// beats the cone.
    pub margin: f64,
    /// `ln(1/n - bound)` when positive.
    pub ln_deficit: Option<f64>,
    /// `ln(1/n - S)` from quadrature, when requested and positive.
    pub numeric_ln_deficit: Option<f64>,
    pub verdict: CompetitorVerdict,
}

impl CompetitorReport {
    pub fn from_point(space: &ConeSpace, point: &SearchPoint) -> Self {
        let b = point.bound;
        Self {
            n: space.n(),
            lambda: space.lambda(),
            delta: point.delta(),
            ln_delta: -point.neg_ln_delta,
            alpha: point.alpha,
            bound: b.value(),
            numeric: None,
            margin: b.scaled_deficit(),
            ln_deficit: b.ln_deficit(),
            numeric_ln_deficit: None,
            verdict: if b.beats_cone() {
                CompetitorVerdict::BeatsCone
            } else {
                CompetitorVerdict::NoImprovement
            },
        }
    }

    /// Adds the quadrature value of `S`.
    pub fn with_numeric(mut self, space: &ConeSpace, cfg: &QuadratureConfig) -> Result<Self> {
        let v = sec5_area_numeric_log(space, -self.ln_delta, self.alpha, cfg)?;
        self.numeric = Some(v.value());
        self.numeric_ln_deficit = v.ln_deficit();
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_from_search() {
        let space = ConeSpace::new(2, 0.9).unwrap();
        let out = competitor_search(&space, DEFAULT_BUDGET);
        let report = CompetitorReport::from_point(&space, out.competitor().unwrap())
            .with_numeric(&space, &QuadratureConfig::default())
            .unwrap();
        assert_eq!(report.verdict, CompetitorVerdict::BeatsCone);
        assert!(report.bound < 0.5);
        assert!(report.numeric.unwrap() <= report.bound + 1e-9);
        assert!(report.numeric_ln_deficit.unwrap() >= report.ln_deficit.unwrap() - 1e-9);
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            serde_json::from_str::<CompetitorReport>(&json).unwrap(),
            report
        );
    }
}

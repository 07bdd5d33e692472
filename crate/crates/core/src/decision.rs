//! Per-cone decision: is `C(S^{n-1}(λ))` area-minimizing in `C(S^n(λ))`?

use serde::{Deserialize, Serialize};

use crate::competitors::{competitor_search, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::geometry::ConeSpace;
use crate::shooting::barrier_certificate;

pub const DEFAULT_BARRIER_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Minimizing,
    NotMinimizing,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Certificate {
    BarrierLine,
    CompetitorFound,
    ThresholdFormula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Certified,
    FormulaOnly,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "certified" => Ok(Self::Certified),
            "formula-only" => Ok(Self::FormulaOnly),
            other => Err(Error::Domain(format!("unknown mode {other:?}"))),
        }
    }
}

/// Outcome of the decision procedure.
///
/// `margin` is signed: the minimum barrier margin for `BarrierLine`, the
/// scaled area deficit `n(1/n - S)/δ^2` for `CompetitorFound`, and
/// `λ - λ*(n)` for `ThresholdFormula`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

impl Decision {
    fn undetermined(diagnostics: Option<String>) -> Self {
        Self {
            verdict: Verdict::Undetermined,
            certificate: None,
            margin: 0.0,
            diagnostics,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct DecideConfig {
    pub barrier_samples: usize,
    pub search_budget: usize,
}

impl Default for DecideConfig {
    fn default() -> Self {
        Self {
            barrier_samples: DEFAULT_BARRIER_SAMPLES,
            search_budget: DEFAULT_BUDGET,
        }
    }
}

/// `λ*(n) = 2 sqrt(n-1)/n`.
pub fn threshold(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("threshold needs n >= 2, got {n}")));
    }
    Ok(2.0 * f64::from(n - 1).sqrt() / f64::from(n))
}

pub fn decide(space: &ConeSpace, mode: Mode, cfg: &DecideConfig) -> Decision {
    match mode {
        Mode::FormulaOnly => {
            let star = 2.0 * f64::from(space.n() - 1).sqrt() / f64::from(space.n());
            let margin = space.lambda() - star;
            // nλ >= 2 sqrt(n-1), compared without the rounding of λ*
            let n = f64::from(space.n());
            let lhs = n * space.lambda();
            let minimizing = lhs * lhs >= 4.0 * (n - 1.0);
            Decision {
                verdict: if minimizing {
                    Verdict::Minimizing
                } else {
                    Verdict::NotMinimizing
                },
                certificate: Some(Certificate::ThresholdFormula),
                margin,
                diagnostics: None,
            }
        }
        Mode::Certified => certified(space, cfg),
    }
}

fn certified(space: &ConeSpace, cfg: &DecideConfig) -> Decision {
    let mut notes = Vec::new();
    match barrier_certificate(space, cfg.barrier_samples) {
        Ok(cert) if cert.is_valid() => {
            return Decision {
                verdict: Verdict::Minimizing,
                certificate: Some(Certificate::BarrierLine),
                margin: cert.margin,
                diagnostics: None,
            };
        }
        Ok(cert) => notes.push(format!("barrier margin {} is not positive", cert.margin)),
        Err(e) => notes.push(e.to_string()),
    }
    let out = competitor_search(space, cfg.search_budget);
    if let Some(p) = out.competitor() {
        return Decision {
            verdict: Verdict::NotMinimizing,
            certificate: Some(Certificate::CompetitorFound),
            margin: p.bound.scaled_deficit(),
            diagnostics: None,
        };
    }
    notes.push(format!(
        "no competitor beats the cone in {} evaluations",
        out.evaluations
    ));
    Decision::undetermined(Some(notes.join("; ")))
}

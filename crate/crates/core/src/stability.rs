//! Violation of the stability inequality for 2-dimensional cones over
//! circles of length `2πλ`, with the cut-off `η` below.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `η = r/ε` on `[0, ε]`, `1` on `(ε, R]`, `2 - r/R` on `(R, 2R]` and `0`
/// beyond.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionEta {
    epsilon: f64,
    radius: f64,
}

impl TestFunctionEta {
    pub fn new(epsilon: f64, radius: f64) -> Result<Self> {
        if !(epsilon > 0.0 && radius > epsilon && radius.is_finite()) {
            return Err(Error::Domain(format!(
                "need 0 < ε < R, got ε = {epsilon}, R = {radius}"
            )));
        }
        Ok(Self { epsilon, radius })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn eval(&self, r: f64) -> f64 {
        let (e, big_r) = (self.epsilon, self.radius);
        if r <= e {
            r / e
        } else if r <= big_r {
            1.0
        } else if r <= 2.0 * big_r {
            2.0 - r / big_r
        } else {
            0.0
        }
    }

    /// `ln(R/ε)`, the only quantity the gap depends on.
    pub fn ln_ratio(&self) -> f64 {
        (self.radius / self.epsilon).ln()
    }
}

/// `C(λ) = (1 - λ^2)/λ^2`, the lower bound of `r^2 Ric` on the cone.
pub fn ricci_constant(lambda: f64) -> f64 {
    (1.0 - lambda) * (1.0 + lambda) / (lambda * lambda)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::Domain(format!("λ must lie in (0, 1], got {lambda}")));
    }
    Ok(())
}

/// `C(λ) ∫_ε^R dr/r - (ε^{-2} ∫_0^ε r dr + R^{-2} ∫_R^{2R} r dr)`
/// `= C(λ) ln(R/ε) - 2`. A positive gap certifies instability.
pub fn stability_gap(lambda: f64, eta: &TestFunctionEta) -> Result<f64> {
    stability_gap_ln(lambda, eta.ln_ratio())
}

/// The gap as a function of `ln(R/ε)`.
pub fn stability_gap_ln(lambda: f64, ln_ratio: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(ricci_constant(lambda) * ln_ratio - 2.0)
}

/// Pair `(ε, R)` with positive gap. The ratio is carried as its logarithm,
/// since it overflows for `λ` close to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstabilityCertificate {
    pub lambda: f64,
    pub epsilon: f64,
    /// `ln(R/ε)`.
    pub ln_ratio: f64,
    /// `2λ^2/(1 - λ^2)`, where the gap vanishes.
    pub critical_ln_ratio: f64,
    pub gap: f64,
}

impl InstabilityCertificate {
    /// `R`, when representable.
    pub fn radius(&self) -> Option<f64> {
        let r = self.epsilon * self.ln_ratio.exp();
        r.is_finite().then_some(r)
    }
}

/// A certificate one unit of `ln(R/ε)` past the zero of the gap, with
/// `ε = 1`; none for `λ = 1`.
pub fn instability_certificate(lambda: f64) -> Result<Option<InstabilityCertificate>> {
    check_lambda(lambda)?;
    if lambda == 1.0 {
        return Ok(None);
    }
    let critical = 2.0 * lambda * lambda / ((1.0 - lambda) * (1.0 + lambda));
    let ln_ratio = critical + 1.0;
    let gap = stability_gap_ln(lambda, ln_ratio)?;
    Ok((gap > 0.0).then_some(InstabilityCertificate {
        lambda,
        epsilon: 1.0,
        ln_ratio,
        critical_ln_ratio: critical,
        gap,
    }))
}

/// `|A|^2` after rescaling `Σ' = λ^{-1} Σ`: `|A'|^2 / λ^2`.
pub fn scale_second_fundamental(a_sq: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if !(a_sq >= 0.0) {
        return Err(Error::Domain(format!(
            "|A|^2 must be nonnegative, got {a_sq}"
        )));
    }
    Ok(a_sq / (lambda * lambda))
}

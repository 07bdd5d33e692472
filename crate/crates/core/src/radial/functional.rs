use std::f64::consts::FRAC_PI_2;

use super::length::LengthProfile;
use super::profile::RadialProfile;
use crate::error::{Error, Result};
use crate::geometry::ConeSpace;
use crate::quadrature::{integrate, integrate_geometric, Estimate, QuadratureConfig};

/// Segments wider than this ratio `b/a` are integrated in `ln t`.
const GEOMETRIC_RATIO: f64 = 1e4;
const DOMAIN_SLACK: f64 = 1e-12;

/// Area `∫ f L sqrt(f'^2 + f^2) dt` of a 2-dimensional radial graph over a
/// cross-section with level-set lengths `L`.
pub fn graph_area(
    f: &RadialProfile,
    l: &LengthProfile,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let (lo, hi) = f.domain();
    if lo < 0.0 {
        return Err(Error::Domain(format!(
            "profile starts at negative distance {lo}"
        )));
    }
    let hi = hi.min(l.support_end());
    let mut breaks = f.breakpoints();
    breaks.extend(l.breakpoints());
    integrate_segments(
        |t| {
            let v = f.value(t);
            let dv = f.derivative(t);
            v * l.eval(t) * dv.hypot(v)
        },
        lo,
        hi,
        breaks,
        cfg,
    )
}

/// The normalized functional
/// `S(f) = ∫_0^{pi/2} sqrt(f'^2 + λ^2 f^2) f^{n-1} cos^{n-1}θ dθ`.
///
/// The cone over the equator has `S = 1/n`.
pub fn s_functional(
    f: &RadialProfile,
    space: &ConeSpace,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let (lo, hi) = f.domain();
    if lo.abs() > DOMAIN_SLACK || (hi - FRAC_PI_2).abs() > DOMAIN_SLACK {
        return Err(Error::Domain(format!(
            "profile must cover [0, pi/2], got [{lo}, {hi}]"
        )));
    }
    let n = space.n() as i32;
    let lambda = space.lambda();
    integrate_segments(
        |t| {
            let v = f.value(t);
            let dv = f.derivative(t);
            let c = t.cos().max(0.0);
            dv.hypot(lambda * v) * (v * c).powi(n - 1)
        },
        lo,
        hi,
        f.breakpoints(),
        cfg,
    )
}

/// Integrates piece by piece between sorted breakpoints, switching to a
/// logarithmic variable on segments spanning many decades.
pub(crate) fn integrate_segments<F: Fn(f64) -> f64>(
    integrand: F,
    lo: f64,
    hi: f64,
    mut breaks: Vec<f64>,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    breaks.retain(|&t| t > lo && t < hi);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut edges = Vec::with_capacity(breaks.len() + 2);
    edges.push(lo);
    edges.extend(breaks);
    edges.push(hi);
    let mut total = Estimate {
        value: 0.0,
        error: 0.0,
        evaluations: 0,
    };
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let est = if a > 0.0 && b / a > GEOMETRIC_RATIO {
            integrate_geometric(&integrand, a, b, cfg)?
        } else {
            integrate(&integrand, a, b, cfg)?
        };
        total.value += est.value;
        total.error += est.error;
        total.evaluations += est.evaluations;
    }
    Ok(total)
}

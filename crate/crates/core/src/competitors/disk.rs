//! The disk `f(t) = α e^{-g_δ(t)}` that closes off the catenoid, with
//! `g_δ(t) = ∫_δ^t L/sqrt(L(0)^2 - L^2)`.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::radial::{LengthProfile, RadialProfile};

const NODES: usize = 256;
const INEQUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct DiskCompetitor {
    pub delta: f64,
    pub alpha: f64,
    pub l0: f64,
    pub profile: RadialProfile,
    /// `f` at the end of the support of `L`.
    pub f_end: f64,
    /// `½ L(0) (α^2 - f_end^2)`.
    pub area: f64,
    /// `½ L(0) (α^2 - α^2 F(δ)^2/F^2)`, an upper bound on `area`; equality
    /// for round spheres.
    pub bound: f64,
    /// `L(0)^2/F^2`, the leading coefficient of the area deficit in `δ^2`.
    pub deficit_coefficient: f64,
}

/// Builds the disk profile on `[δ, end of support]`.
///
/// Tabulated lengths must satisfy `L(t)^2 + F(t)^2 <= L(0)^2`, and `L`
/// must stay below `L(0)` on `[δ, end]`.
pub fn disk_profile(
    delta: f64,
    alpha: f64,
    l: &LengthProfile,
    cfg: &QuadratureConfig,
) -> Result<DiskCompetitor> {
    let end = l.support_end();
    if !(delta > 0.0 && delta < end) {
        return Err(Error::Domain(format!(
            "δ must lie in (0, {end}), got {delta}"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("α must lie in (0, 1), got {alpha}")));
    }
    if matches!(l, LengthProfile::Tabulated { .. }) {
        l.check_length_area_inequality(INEQUALITY_TOL, cfg)?;
    }
    let l0 = l.l0();
    let rate = |t: f64| {
        let v = l.eval(t);
        v / ((l0 - v) * (l0 + v)).sqrt()
    };

    let mut nodes: Vec<f64> = (0..=NODES)
        .map(|k| delta + (end - delta) * k as f64 / NODES as f64)
        .collect();
    nodes.extend(
        l.breakpoints()
            .into_iter()
            .filter(|&t| t > delta && t < end),
    );
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    for &t in &nodes {
        if !rate(t).is_finite() {
            return Err(Error::Precondition(format!(
                "L reaches L(0) at t = {t}; g is singular there"
            )));
        }
    }

    let mut g = Vec::with_capacity(nodes.len());
    g.push(0.0);
    for w in nodes.windows(2) {
        let step = integrate(rate, w[0], w[1], cfg)?.value;
        g.push(g[g.len() - 1] + step);
    }
    let values: Vec<f64> = g.iter().map(|gi| alpha * (-gi).exp()).collect();
    let slopes: Vec<f64> = nodes
        .iter()
        .zip(&values)
        .map(|(&t, f)| -f * rate(t))
        .collect();
    let f_end = values[values.len() - 1];
    let profile = RadialProfile::sampled_hermite(nodes, values, slopes, None)?;

    let area = 0.5 * l0 * (alpha * alpha - f_end * f_end);
    let big_f = l.total_area(cfg)?;
    let ratio = l.area_to(delta, cfg)? / big_f;
    let bound = 0.5 * l0 * alpha * alpha * (1.0 - ratio * ratio);
    Ok(DiskCompetitor {
        delta,
        alpha,
        l0,
        profile,
        f_end,
        area,
        bound,
        deficit_coefficient: (l0 / big_f).powi(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::graph_area;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn round_sphere_is_exact() {
        let cfg = QuadratureConfig::default();
        let l = LengthProfile::round_sphere(2.0 * PI).unwrap();
        let d = disk_profile(0.1, 0.5, &l, &cfg).unwrap();
        assert!((d.f_end - 0.5 * 0.1f64.sin()).abs() < 1e-12);
        let exact = PI * 0.25 * 0.1f64.cos().powi(2);
        assert!((d.area - exact).abs() < 1e-10);
        assert!((d.area - 0.77756).abs() < 5e-5);
        assert!((d.bound - d.area).abs() < 1e-10);
        assert!((d.deficit_coefficient - 1.0).abs() < 1e-14);
        // g(t) = ln(sin t / sin δ)
        let t = 0.7;
        assert!((d.profile.value(t) - 0.5 * 0.1f64.sin() / t.sin()).abs() < 1e-9);
    }

    #[test]
    fn area_formula_matches_graph_area() {
        let cfg = QuadratureConfig::default();
        let l = LengthProfile::round_sphere(2.0 * PI).unwrap();
        let d = disk_profile(0.2, 0.4, &l, &cfg).unwrap();
        let quad = graph_area(&d.profile, &l, &cfg).unwrap().value;
        assert!((quad - d.area).abs() < 1e-7, "{quad} vs {}", d.area);
    }

    #[test]
    fn tabulated_length_satisfies_bound() {
        let cfg = QuadratureConfig::default();
        // L = L0 cos^2 t: F(t) = L0 (t + sin t cos t)/2
        let ts: Vec<f64> = (0..=200).map(|k| FRAC_PI_2 * k as f64 / 200.0).collect();
        let ls: Vec<f64> = ts.iter().map(|t| 3.0 * t.cos().powi(2)).collect();
        let l = LengthProfile::tabulated(ts, ls).unwrap();
        let d = disk_profile(0.1, 0.5, &l, &cfg).unwrap();
        assert!(d.area <= d.bound + 1e-9, "{} > {}", d.area, d.bound);
        assert!(d.deficit_coefficient > 1.0);
    }

    #[test]
    fn rejects_length_violating_inequality() {
        let cfg = QuadratureConfig::default();
        let ts: Vec<f64> = (0..=10).map(|k| 0.1 * k as f64).collect();
        let ls = vec![1.0; 11];
        let l = LengthProfile::tabulated(ts, ls).unwrap();
        assert!(matches!(
            disk_profile(0.1, 0.5, &l, &cfg),
            Err(Error::Precondition(_))
        ));
    }
}

//! Mass ratios `Vol(B_r ∩ Σ) / r^k` about the cone vertex.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geometry::{unit_ball_volume, ConeSpace};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::radial::{integrate_segments, RadialProfile};
use crate::roots::newton_bracketed;

/// Surfaces whose mass ratio can be evaluated.
#[derive(Debug, Clone, Copy)]
pub enum Surface<'a> {
    /// A `dim`-plane through the origin of Euclidean space.
    Hyperplane { dim: u32 },
    /// The cone over the equator `C(S^{n-1}(λ))` inside `C(S^n(λ))`.
    EquatorialCone { space: ConeSpace },
    /// The catenoid `ρ = a cosh(z/a)` in Euclidean 3-space, centred at its
    /// neck.
    EuclideanCatenoid { neck: f64 },
    /// The hypersurface `t = f(θ)` in `C(S^n(λ))`, with `θ` the angle from
    /// the equator.
    RadialGraph {
        profile: &'a RadialProfile,
        space: ConeSpace,
    },
}

impl Surface<'_> {
    pub fn dimension(&self) -> u32 {
        match self {
            Self::Hyperplane { dim } => *dim,
            Self::EquatorialCone { space } | Self::RadialGraph { space, .. } => space.n(),
            Self::EuclideanCatenoid { .. } => 2,
        }
    }
}

/// `Vol(B_r ∩ Σ) / r^k` for the ball of radius `r` about the vertex (or
/// origin), `k` the dimension of `Σ`.
pub fn density_ratio(surface: &Surface<'_>, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!(
            "ball radius must be positive, got {r}"
        )));
    }
    let k = surface.dimension();
    let volume = match surface {
        Surface::Hyperplane { dim } => unit_ball_volume(*dim) * r.powi(*dim as i32),
        Surface::EquatorialCone { space } => {
            let n = space.n() as i32;
            unit_ball_volume(space.n()) * space.lambda().powi(n - 1) * r.powi(n)
        }
        Surface::EuclideanCatenoid { neck } => catenoid_volume(*neck, r, cfg)?,
        Surface::RadialGraph { profile, space } => radial_graph_volume(profile, space, r, cfg)?,
    };
    Ok(volume / r.powi(k as i32))
}

fn catenoid_volume(a: f64, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!(
            "catenoid neck must be positive, got {a}"
        )));
    }
    if r <= a {
        return Ok(0.0);
    }
    // the sphere of radius r meets the catenoid at height ±z_r
    let g = |z: f64| {
        let c = (z / a).cosh();
        let s = (z / a).sinh();
        (a * a * c * c + z * z - r * r, 2.0 * a * c * s + 2.0 * z)
    };
    let z_r = newton_bracketed(g, 0.0, r, 1e-15 * r, 200)?;
    let half = integrate(|z| 2.0 * PI * a * (z / a).cosh().powi(2), 0.0, z_r, cfg)?;
    Ok(2.0 * half.value)
}

fn radial_graph_volume(
    profile: &RadialProfile,
    space: &ConeSpace,
    r: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let (lo, hi) = profile.domain();
    if lo < 0.0 || hi > FRAC_PI_2 + 1e-12 {
        return Err(Error::Domain(format!(
            "profile domain [{lo}, {hi}] leaves [0, pi/2]"
        )));
    }
    let boundary = profile.value(lo);
    if r > boundary * (1.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "ball radius {r} reaches the boundary at distance {boundary}"
        )));
    }
    let inside = sublevel_intervals(|t| profile.value(t) - r, lo, hi, &profile.breakpoints())?;
    let n = space.n() as i32;
    let lambda = space.lambda();
    let mut s = 0.0;
    for (a, b) in inside {
        s += integrate_segments(
            |t| {
                let v = profile.value(t);
                profile.derivative(t).hypot(lambda * v) * (v * t.cos().max(0.0)).powi(n - 1)
            },
            a,
            b,
            profile.breakpoints(),
            cfg,
        )?
        .value;
    }
    Ok(f64::from(space.n()) * unit_ball_volume(space.n()) * lambda.powi(n - 1) * s)
}

/// Maximal subintervals of `[lo, hi]` on which `g < 0`, located on a grid
/// refined by bisection.
fn sublevel_intervals<G: Fn(f64) -> f64>(
    g: G,
    lo: f64,
    hi: f64,
    breaks: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let mut grid: Vec<f64> = (0..=512)
        .map(|k| lo + (hi - lo) * k as f64 / 512.0)
        .collect();
    grid.extend(breaks.iter().copied().filter(|&t| t > lo && t < hi));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let crossing = |mut a: f64, mut b: f64| {
        let below_a = g(a) < 0.0;
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if (g(m) < 0.0) == below_a {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    };
    let mut out = Vec::new();
    let mut start = (g(lo) < 0.0).then_some(lo);
    for w in grid.windows(2) {
        let below_right = g(w[1]) < 0.0;
        match (start, below_right) {
            (None, true) => start = Some(crossing(w[0], w[1])),
            (Some(a), false) => {
                out.push((a, crossing(w[0], w[1])));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(a) = start {
        out.push((a, hi));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_density_is_unit_ball_volume() {
        let cfg = QuadratureConfig::default();
        for r in [0.1, 1.0, 7.0] {
            let d = density_ratio(&Surface::Hyperplane { dim: 2 }, r, &cfg).unwrap();
            assert!((d - PI).abs() < 1e-14);
        }
        assert!(density_ratio(&Surface::Hyperplane { dim: 2 }, 0.0, &cfg).is_err());
    }

    #[test]
    fn catenoid_matches_closed_form() {
        let cfg = QuadratureConfig::default();
        let a = 0.5;
        let r: f64 = 3.0;
        let d = density_ratio(&Surface::EuclideanCatenoid { neck: a }, r, &cfg).unwrap();
        let g = |z: f64| a * a * (z / a).cosh().powi(2) + z * z - r * r;
        let (mut lo, mut hi) = (0.0, r);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if g(m) < 0.0 {
                lo = m
            } else {
                hi = m
            }
        }
        let z = 0.5 * (lo + hi);
        let exact = 2.0 * PI * a * (z + 0.5 * a * (2.0 * z / a).sinh()) / (r * r);
        assert!((d - exact).abs() < 1e-10 * exact);
        assert_eq!(
            density_ratio(&Surface::EuclideanCatenoid { neck: a }, 0.4, &cfg).unwrap(),
            0.0
        );
    }

    #[test]
    fn radial_graph_full_mass_matches_s_functional() {
        let cfg = QuadratureConfig::default();
        let space = ConeSpace::new(2, 1.0).unwrap();
        let f =
            RadialProfile::closed_form(0.0, FRAC_PI_2, |t| (-t).exp(), |t| -(-t).exp()).unwrap();
        let surface = Surface::RadialGraph { profile: &f, space };
        let full = density_ratio(&surface, 1.0, &cfg).unwrap();
        let s = crate::radial::s_functional(&f, &space, &cfg).unwrap().value;
        assert!((full - 2.0 * PI * s).abs() < 1e-9);
        assert_eq!(density_ratio(&surface, 0.1, &cfg).unwrap(), 0.0);
        assert!(density_ratio(&surface, 1.5, &cfg).is_err());
    }

    #[test]
    fn sublevel_intervals_of_cosine() {
        let iv = sublevel_intervals(f64::cos, 0.0, 7.0, &[]).unwrap();
        assert_eq!(iv.len(), 1);
        assert!((iv[0].0 - FRAC_PI_2).abs() < 1e-12);
        assert!((iv[0].1 - 3.0 * FRAC_PI_2).abs() < 1e-12);
    }
}

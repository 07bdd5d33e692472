//! The Euler–Lagrange equation of the normalized area functional in the
//! angle substitution `H`, where `cos H = -f'/sqrt(f'^2 + λ^2 f^2)`:
//!
//! ```text
//! H' = nλ - (n-1) tan θ cot H,        f'/f = -λ cot H.
//! ```

mod ode;
mod shoot;

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConeSpace;

pub use shoot::{
    find_extending, reconstruct_f, shoot, shoot_once, write_trajectory, ExitKind, ExtendingShot,
    ShootingOutcome, StepConfig, TrajectoryPoint,
};

/// `cot H`, exactly zero at `H = pi/2`.
pub(crate) fn cot(h: f64) -> f64 {
    if h == FRAC_PI_2 {
        0.0
    } else {
        h.cos() / h.sin()
    }
}

/// Right-hand side `nλ - (n-1) tan θ cot H`.
pub fn h_rhs(theta: f64, h: f64, space: &ConeSpace) -> Result<f64> {
    if !(h > 0.0 && h < PI) {
        return Err(Error::Domain(format!("cot H is undefined at H = {h}")));
    }
    if !(0.0..FRAC_PI_2).contains(&theta) {
        return Err(Error::Domain(format!("θ = {theta} lies outside [0, pi/2)")));
    }
    Ok(h_rhs_unchecked(theta, h, space.n(), space.lambda()))
}

#[inline]
pub(crate) fn h_rhs_unchecked(theta: f64, h: f64, n: u32, lambda: f64) -> f64 {
    let n = f64::from(n);
    n * lambda - (n - 1.0) * theta.tan() * cot(h)
}

/// Initial angle for the boundary slope `A = f'(0)` of a profile with
/// `f(0) = 1`.
pub fn initial_angle(slope: f64, lambda: f64) -> f64 {
    // cos H0 = -A / sqrt(A^2 + λ^2), sin H0 = λ / sqrt(A^2 + λ^2)
    lambda.atan2(-slope)
}

/// Boundary slope `A = -λ cot H0` belonging to an initial angle.
pub fn initial_slope(h0: f64, lambda: f64) -> f64 {
    -lambda * cot(h0)
}

/// `-A / (n sqrt(A^2 + λ^2))`: the normalized area of an extending solution
/// with boundary slope `A <= 0`. Tends to `1/n` as `A -> -∞`.
pub fn boundary_flux(slope: f64, space: &ConeSpace) -> f64 {
    let n = f64::from(space.n());
    if slope == f64::NEG_INFINITY {
        return 1.0 / n;
    }
    -slope / (n * slope.hypot(space.lambda()))
}

/// Both roots `c` of `c = nλ - (n-1)/c`, larger first, when real.
pub fn barrier_roots(space: &ConeSpace) -> Option<(f64, f64)> {
    let n = f64::from(space.n());
    let nl = n * space.lambda();
    let disc = nl * nl - 4.0 * (n - 1.0);
    if disc < 0.0 {
        return None;
    }
    let large = 0.5 * (nl + disc.sqrt());
    Some((large, (n - 1.0) / large))
}

/// Slope `c` of the barrier line `H = cθ`: the larger root of
/// `c = nλ - (n-1)/c`.
pub fn barrier_slope(space: &ConeSpace) -> Option<f64> {
    barrier_roots(space).map(|(c, _)| c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierPoint {
    pub theta: f64,
    pub h: f64,
    pub h_rhs: f64,
    /// `H'(θ, cθ) - c`, evaluated without cancellation.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarrierCertificate {
    pub c: f64,
    pub verified_points: Vec<BarrierPoint>,
    /// Minimum margin over the sampled points.
    pub margin: f64,
}

impl BarrierCertificate {
    pub fn is_valid(&self) -> bool {
        self.margin > 0.0
    }
}

/// Samples `H' - c` along the line `H = cθ` inside the working domain.
///
/// On the line `nλ - c = (n-1)/c`, so the margin is
/// `(n-1)(1/c - tan θ / tan cθ)`, positive whenever `c > 1`.
pub fn barrier_certificate(space: &ConeSpace, samples: usize) -> Result<BarrierCertificate> {
    let c = barrier_slope(space).ok_or_else(|| {
        Error::Precondition(format!(
            "no barrier line: n^2 λ^2 < 4(n-1) for n = {}, λ = {}",
            space.n(),
            space.lambda()
        ))
    })?;
    if samples == 0 {
        return Err(Error::Precondition(
            "barrier certificate needs at least one sample".into(),
        ));
    }
    let n1 = f64::from(space.n()) - 1.0;
    let theta_max = FRAC_PI_2 * (1.0f64).min(1.0 / c);
    let mut points = Vec::with_capacity(samples);
    let mut margin = f64::INFINITY;
    for i in 1..=samples {
        let theta = theta_max * i as f64 / (samples + 1) as f64;
        let h = c * theta;
        let m = n1 * (1.0 / c - theta.tan() / h.tan());
        margin = margin.min(m);
        points.push(BarrierPoint {
            theta,
            h,
            h_rhs: h_rhs_unchecked(theta, h, space.n(), space.lambda()),
            margin: m,
        });
    }
    Ok(BarrierCertificate {
        c,
        verified_points: points,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: u32, l: f64) -> ConeSpace {
        ConeSpace::new(n, l).unwrap()
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(h_rhs(0.0, FRAC_PI_2, &space(2, 0.5)).unwrap(), 1.0);
        assert!((h_rhs(PI / 4.0, PI / 4.0, &space(3, 1.0)).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(
            h_rhs(PI / 3.0, FRAC_PI_2, &space(4, 0.8)).unwrap(),
            4.0 * 0.8
        );
        assert!(h_rhs(0.1, 0.0, &space(2, 0.5)).is_err());
        assert!(h_rhs(0.1, PI, &space(2, 0.5)).is_err());
    }

    #[test]
    fn slope_and_angle_are_inverse() {
        for a in [-1e3, -2.0, -0.3, 0.0] {
            let h0 = initial_angle(a, 0.9);
            assert!((initial_slope(h0, 0.9) - a).abs() < 1e-12 * a.abs().max(1.0));
        }
        assert_eq!(initial_angle(0.0, 0.9), FRAC_PI_2);
    }

    #[test]
    fn flux_examples() {
        assert_eq!(boundary_flux(0.0, &space(3, 0.7)), 0.0);
        let v = boundary_flux(-1.0, &space(3, 1.0));
        assert!((v - 1.0 / (3.0 * 2f64.sqrt())).abs() < 1e-15);
        assert_eq!(boundary_flux(f64::NEG_INFINITY, &space(4, 0.9)), 0.25);
        assert!(boundary_flux(-1e3, &space(4, 0.9)) < 0.25);
    }

    #[test]
    fn barrier_roots_examples() {
        assert!((barrier_slope(&space(3, 0.95)).unwrap() - 1.6).abs() < 1e-12);
        assert_eq!(barrier_slope(&space(2, 1.0)), Some(1.0));
        assert_eq!(barrier_slope(&space(3, 0.9)), None);
        let (c1, c2) = barrier_roots(&space(4, 0.95)).unwrap();
        for c in [c1, c2] {
            assert!((c - (4.0 * 0.95 - 3.0 / c)).abs() < 1e-12);
        }
        assert!(c1 >= c2);
    }

    #[test]
    fn certificate_margins() {
        let cert = barrier_certificate(&space(3, 0.95), 1000).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.verified_points.len(), 1000);
        for p in &cert.verified_points {
            assert!(p.h_rhs > cert.c);
        }
        let flat = barrier_certificate(&space(2, 1.0), 100).unwrap();
        assert!(flat.margin >= 0.0);
        assert!(matches!(
            barrier_certificate(&space(3, 0.9), 10),
            Err(Error::Precondition(_))
        ));
    }
}

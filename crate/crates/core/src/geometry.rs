//! The metric cone `C(S^n(λ))` with metric `dt^2 + t^2 g`, where `g` is the
//! round metric of radius `λ`, and its curvatures away from the vertex.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace")]
pub struct ConeSpace {
    n: u32,
    lambda: f64,
}

#[derive(Deserialize)]
struct RawSpace {
    n: u32,
    lambda: f64,
}

impl TryFrom<RawSpace> for ConeSpace {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        Self::new(raw.n, raw.lambda)
    }
}

impl ConeSpace {
    /// `n >= 2` is the dimension of the cross-section sphere and
    /// `0 < λ <= 1` its radius.
    pub fn new(n: u32, lambda: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "cross-section dimension must be at least 2, got {n}"
            )));
        }
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::Domain(format!(
                "cross-section radius must lie in (0, 1], got {lambda}"
            )));
        }
        Ok(Self { n, lambda })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn is_euclidean(&self) -> bool {
        self.lambda == 1.0
    }

    pub fn cross_section(&self) -> CrossSectionCurvature {
        CrossSectionCurvature::round(self.n, self.lambda)
    }
}

/// Curvature of a constant-curvature cross-section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossSectionCurvature {
    pub sectional: f64,
    pub ricci_diag: f64,
    pub dim: u32,
}

impl CrossSectionCurvature {
    pub fn round(dim: u32, radius: f64) -> Self {
        let sectional = 1.0 / (radius * radius);
        Self {
            sectional,
            ricci_diag: (dim as f64 - 1.0) * sectional,
            dim,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    /// Spanned by two vectors tangent to the cross-section.
    Tangential,
    /// Containing the radial direction.
    Radial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Tangential,
    Radial,
}

fn check_radius(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "curvature is undefined at t = {t}; the vertex is singular"
        )))
    }
}

/// `1/λ^2 - 1`, exactly zero when `λ = 1`.
fn curvature_excess(lambda: f64) -> f64 {
    (1.0 - lambda) * (1.0 + lambda) / (lambda * lambda)
}

/// Sectional curvature of the cone at distance `t` from the vertex.
pub fn cone_sectional(space: &ConeSpace, t: f64, plane: Plane) -> Result<f64> {
    check_radius(t)?;
    Ok(match plane {
        Plane::Tangential => curvature_excess(space.lambda) / (t * t),
        Plane::Radial => 0.0,
    })
}

/// Ricci curvature of the cone at distance `t` in a unit direction.
pub fn cone_ricci(space: &ConeSpace, t: f64, direction: Direction) -> Result<f64> {
    check_radius(t)?;
    Ok(match direction {
        Direction::Tangential => (space.n as f64 - 1.0) * curvature_excess(space.lambda) / (t * t),
        Direction::Radial => 0.0,
    })
}

/// Volume `ω_k` of the Euclidean unit ball in dimension `k`.
pub fn unit_ball_volume(k: u32) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / k as f64 * unit_ball_volume(k - 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_spaces() {
        assert!(ConeSpace::new(1, 0.5).is_err());
        assert!(ConeSpace::new(2, 0.0).is_err());
        assert!(ConeSpace::new(2, 1.01).is_err());
        assert!(ConeSpace::new(2, f64::NAN).is_err());
    }

    #[test]
    fn deserialization_validates() {
        assert!(serde_json::from_str::<ConeSpace>(r#"{"n":3,"lambda":0.9}"#).is_ok());
        assert!(serde_json::from_str::<ConeSpace>(r#"{"n":3,"lambda":1.5}"#).is_err());
    }

    #[test]
    fn vertex_is_excluded() {
        let s = ConeSpace::new(2, 0.5).unwrap();
        assert!(cone_sectional(&s, 0.0, Plane::Tangential).is_err());
        assert!(cone_ricci(&s, -1.0, Direction::Radial).is_err());
    }

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn cross_section_ricci_is_trace_of_sectional() {
        let c = ConeSpace::new(4, 0.7).unwrap().cross_section();
        assert_eq!(c.ricci_diag, 3.0 * c.sectional);
    }
}

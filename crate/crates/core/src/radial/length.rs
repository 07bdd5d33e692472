use std::f64::consts::FRAC_PI_2;
use std::io::BufRead;

use super::interp::Interpolant;
use super::profile::parse_columns;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_breaks, QuadratureConfig};

/// Length `L(t)` of the level set at distance `t` from the equator in the
/// cross-section, vanishing past the end of its support.
#[derive(Debug, Clone, PartialEq)]
pub enum LengthProfile {
    /// `L(t) = L0 cos t` on `[0, pi/2]`.
    RoundSphere { l0: f64 },
    /// Spline through `(t_i, L_i)` with `t_0 = 0`.
    Tabulated { table: TabulatedLength },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedLength {
    spline: Interpolant,
}

impl LengthProfile {
    pub fn round_sphere(l0: f64) -> Result<Self> {
        if !(l0 > 0.0 && l0.is_finite()) {
            return Err(Error::Domain(format!("L(0) must be positive, got {l0}")));
        }
        Ok(Self::RoundSphere { l0 })
    }

    /// A tabulated profile. The table must start at `t = 0`, be nonnegative,
    /// and satisfy `L(t) <= L(0)`.
    pub fn tabulated(ts: Vec<f64>, ls: Vec<f64>) -> Result<Self> {
        if ts.first() != Some(&0.0) {
            return Err(Error::Precondition(
                "length table must start at t = 0".into(),
            ));
        }
        if ls.iter().any(|&l| !(l >= 0.0)) {
            return Err(Error::Precondition("lengths must be nonnegative".into()));
        }
        let l0 = ls[0];
        if !(l0 > 0.0) {
            return Err(Error::Precondition("L(0) must be positive".into()));
        }
        if let Some(i) = ls.iter().position(|&l| l > l0) {
            return Err(Error::Precondition(format!(
                "L(t_{i}) = {} exceeds L(0) = {l0}",
                ls[i]
            )));
        }
        let spline = Interpolant::natural_spline(ts, ls)?;
        Ok(Self::Tabulated {
            table: TabulatedLength { spline },
        })
    }

    /// Reads a two-column `(t, L)` table.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut ts = Vec::new();
        let mut ls = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let cols = parse_columns(trimmed, idx + 1)?;
            if cols.len() != 2 {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected 2 columns, found {}", cols.len()),
                });
            }
            ts.push(cols[0]);
            ls.push(cols[1]);
        }
        Self::tabulated(ts, ls)
    }

    pub fn l0(&self) -> f64 {
        match self {
            Self::RoundSphere { l0 } => *l0,
            Self::Tabulated { table } => table.spline.values()[0],
        }
    }

    /// End of the support: `L(t) = 0` beyond this point.
    pub fn support_end(&self) -> f64 {
        match self {
            Self::RoundSphere { .. } => FRAC_PI_2,
            Self::Tabulated { table } => table.spline.hi(),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t < 0.0 {
            return f64::NAN;
        }
        match self {
            Self::RoundSphere { l0 } => {
                if t <= FRAC_PI_2 {
                    l0 * t.cos()
                } else {
                    0.0
                }
            }
            Self::Tabulated { table } => {
                if t > table.spline.hi() {
                    0.0
                } else {
                    table.spline.eval(t).0.max(0.0)
                }
            }
        }
    }

    /// Interior nodes of a tabulated profile.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Self::RoundSphere { .. } => Vec::new(),
            Self::Tabulated { table } => {
                let nodes = table.spline.nodes();
                nodes[1..nodes.len() - 1].to_vec()
            }
        }
    }

    /// `F(t) = integral of L over [0, t]`.
    pub fn area_to(&self, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
        match self {
            Self::RoundSphere { l0 } => Ok(l0 * t.min(FRAC_PI_2).sin()),
            Self::Tabulated { .. } => {
                let end = t.min(self.support_end());
                Ok(
                    integrate_with_breaks(|s| self.eval(s), 0.0, end, &self.breakpoints(), cfg)?
                        .value,
                )
            }
        }
    }

    /// Total area `F` of the hemisphere bounded by the equator.
    pub fn total_area(&self, cfg: &QuadratureConfig) -> Result<f64> {
        self.area_to(self.support_end(), cfg)
    }

    /// Checks `F'(t)^2 + F(t)^2 <= L(0)^2` at every table node (tolerance
    /// relative to `L(0)^2`). Round spheres attain equality.
    pub fn check_length_area_inequality(&self, rel_tol: f64, cfg: &QuadratureConfig) -> Result<()> {
        let l0 = self.l0();
        let nodes: Vec<f64> = match self {
            Self::RoundSphere { .. } => (0..=64).map(|k| FRAC_PI_2 * k as f64 / 64.0).collect(),
            Self::Tabulated { table } => table.spline.nodes().to_vec(),
        };
        for t in nodes {
            let big_f = self.area_to(t, cfg)?;
            let l = self.eval(t);
            let lhs = l * l + big_f * big_f;
            if lhs > l0 * l0 * (1.0 + rel_tol) {
                return Err(Error::Precondition(format!(
                    "F'(t)^2 + F(t)^2 = {lhs} exceeds L(0)^2 = {} at t = {t}",
                    l0 * l0
                )));
            }
        }
        Ok(())
    }
}

//! Adaptive Gauss–Kronrod quadrature.
//!
//! A 7/15-point Gauss–Kronrod pair is applied on every subinterval and the
//! interval with the largest error estimate is bisected until the summed
//! estimate meets `max(abs_tol, rel_tol * |I|)`. Declared breakpoints seed the
//! initial partition so no panel straddles a derivative jump.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Hard cap on panels, independent of `max_depth`.
const MAX_PANELS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections applied to any initial panel.
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 60,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> Result<Self> {
        let cfg = Self {
            abs_tol,
            rel_tol,
            max_depth,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Precondition(format!(
                "quadrature tolerances must be positive (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_depth == 0 {
            return Err(Error::Precondition("max_depth must be at least 1".into()));
        }
        Ok(())
    }

    /// Same configuration with both tolerances scaled by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, depth: u32) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Domain(format!(
                "integrand is not finite at x = {x:e} ({y})"
            )))
        }
    };

    let fc = eval(center)?;
    let mut res_k = WGK[7] * fc;
    let mut res_g = WG[3] * fc;
    let mut res_abs = res_k.abs();
    let mut f1 = [0.0; 7];
    let mut f2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let y1 = eval(center - dx)?;
        let y2 = eval(center + dx)?;
        f1[j] = y1;
        f2[j] = y2;
        res_k += WGK[j] * (y1 + y2);
        res_abs += WGK[j] * (y1.abs() + y2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (y1 + y2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        depth,
    })
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    integrate_with_breaks(f, a, b, &[], cfg)
}

/// Integrates `f` over `[a, b]`, seeding the partition with `breaks`.
///
/// Breakpoints outside the open interval are ignored. Reversed limits give
/// the negated integral.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!(
            "integration limits must be finite ({a}, {b})"
        )));
    }
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    if a > b {
        let est = integrate_with_breaks(f, b, a, breaks, cfg)?;
        return Ok(Estimate {
            value: -est.value,
            ..est
        });
    }

    let mut nodes: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    let mut edges = Vec::with_capacity(nodes.len() + 2);
    edges.push(a);
    edges.extend(nodes);
    edges.push(b);

    let mut heap = BinaryHeap::new();
    let mut settled: Vec<Panel> = Vec::new();
    let mut evaluations = 0;
    for w in edges.windows(2) {
        heap.push(gk15(&f, w[0], w[1], 0)?);
        evaluations += 15;
    }

    let sums = |heap: &BinaryHeap<Panel>, settled: &[Panel]| -> (f64, f64) {
        heap.iter()
            .chain(settled.iter())
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
    };
    let (mut total, mut err) = sums(&heap, &settled);
    loop {
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if err <= tol {
            // running sums drift; confirm against a fresh summation
            let (t, e) = sums(&heap, &settled);
            total = t;
            err = e;
            if err <= cfg.abs_tol.max(cfg.rel_tol * total.abs()) {
                return Ok(Estimate {
                    value: total,
                    error: err,
                    evaluations,
                });
            }
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => {
                return Err(Error::NonConvergence {
                    method: "adaptive quadrature",
                    residual: err,
                });
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        if worst.depth >= cfg.max_depth || mid <= worst.a || mid >= worst.b {
            settled.push(worst);
            continue;
        }
        if heap.len() + settled.len() >= MAX_PANELS {
            return Err(Error::NonConvergence {
                method: "adaptive quadrature",
                residual: err,
            });
        }
        let left = gk15(&f, worst.a, mid, worst.depth + 1)?;
        let right = gk15(&f, mid, worst.b, worst.depth + 1)?;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        evaluations += 30;
    }
}

/// Integrates over `[a, b]` with `0 < a < b` in the variable `s = ln x`.
///
/// Suited to integrands with `1/x`-like behaviour spread over many decades,
/// where plain bisection would exhaust its depth.
pub fn integrate_geometric<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if !(a > 0.0 && b > a) {
        return Err(Error::Domain(format!(
            "geometric quadrature needs 0 < a < b, got [{a}, {b}]"
        )));
    }
    integrate(
        |s: f64| {
            let x = s.exp();
            f(x) * x
        },
        a.ln(),
        b.ln(),
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let cfg = QuadratureConfig::default();
        let est = integrate(|x| 3.0 * x * x + 1.0, 0.0, 2.0, &cfg).unwrap();
        assert!((est.value - 10.0).abs() < 1e-14);
        assert_eq!(est.evaluations, 15);
    }

    #[test]
    fn reversed_and_empty_limits() {
        let cfg = QuadratureConfig::default();
        let fwd = integrate(f64::sin, 0.0, 1.0, &cfg).unwrap().value;
        let rev = integrate(f64::sin, 1.0, 0.0, &cfg).unwrap().value;
        assert_eq!(fwd, -rev);
        assert_eq!(integrate(f64::sin, 1.0, 1.0, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn kink_with_breakpoint() {
        let cfg = QuadratureConfig::default();
        let f = |x: f64| (x - 0.3).abs();
        let exact = 0.5 * 0.3 * 0.3 + 0.5 * 0.7 * 0.7;
        let with = integrate_with_breaks(f, 0.0, 1.0, &[0.3], &cfg).unwrap();
        assert!((with.value - exact).abs() < 1e-15);
        let without = integrate(f, 0.0, 1.0, &cfg).unwrap();
        assert!((without.value - exact).abs() < 1e-10);
        assert!(with.evaluations < without.evaluations);
    }

    #[test]
    fn endpoint_singularity() {
        let cfg = QuadratureConfig::new(1e-8, 1e-8, 60).unwrap();
        let est = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &cfg).unwrap();
        assert!((est.value - 2.0).abs() < 1e-8, "{}", est.value);
        // bisection alone cannot resolve the singular panel to 1e-10
        let err = integrate(
            |x: f64| 1.0 / x.sqrt(),
            0.0,
            1.0,
            &QuadratureConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonConvergence { residual, .. } if residual < 1e-8));
    }

    #[test]
    fn geometric_substitution_spans_decades() {
        let cfg = QuadratureConfig::default();
        let est = integrate_geometric(|x: f64| x.cos() / x.sin(), 1e-30, PI / 2.0, &cfg).unwrap();
        let exact = -(1e-30f64).sin().ln();
        assert!((est.value - exact).abs() < 1e-9 * exact);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let cfg = QuadratureConfig::default();
        let err =
            integrate(|x: f64| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn depth_limit_reports_non_convergence() {
        let cfg = QuadratureConfig::new(1e-14, 1e-14, 2).unwrap();
        let err = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn invalid_config_rejected() {
        assert!(QuadratureConfig::new(0.0, 1e-10, 10).is_err());
        assert!(QuadratureConfig::new(1e-10, 1e-10, 0).is_err());
    }

    #[test]
    fn doubling_depth_is_stable() {
        let base = QuadratureConfig::default();
        let deep = QuadratureConfig {
            max_depth: 120,
            ..base
        };
        let f = |x: f64| (1.0 + x * x).sqrt() * (-x).exp();
        let a = integrate(f, 0.0, 5.0, &base).unwrap().value;
        let b = integrate(f, 0.0, 5.0, &deep).unwrap().value;
        assert!((a - b).abs() <= 10.0 * base.abs_tol);
    }
}

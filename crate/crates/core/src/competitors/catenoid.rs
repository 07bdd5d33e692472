//! The catenoid cap `f cos t = a cosh((f sin t - b)/a)` joining the boundary
//! circle `f(0) = 1` to the circle `f(δ) = α`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radial::RadialProfile;
use crate::roots::newton_bracketed;

const RESIDUAL_TOL: f64 = 1e-12;
const MAX_ITER: usize = 100;
const DAMPING: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatenoidParams {
    pub delta: f64,
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
}

impl CatenoidParams {
    /// Residuals of `1 = a cosh(-b/a)` and `α cos δ = a cosh((α sin δ - b)/a)`.
    pub fn residuals(&self) -> (f64, f64) {
        residuals(self.delta, self.alpha, self.a, self.b)
    }

    /// Profile over the distance `t ∈ [0, δ]`, solved pointwise from the
    /// height parametrization `ρ(z) = a cosh((z - b)/a)`.
    pub fn profile(&self) -> Result<RadialProfile> {
        let p = *self;
        let z_max = p.alpha * p.delta.sin();
        if z_max >= p.b {
            return Err(Error::Domain(
                "junction lies beyond the catenoid neck".into(),
            ));
        }
        let value = move |t: f64| {
            let rho = |z: f64| p.a * ((z - p.b) / p.a).cosh();
            let tan = t.tan();
            let g = |z: f64| (z - rho(z) * tan, 1.0 - ((z - p.b) / p.a).sinh() * tan);
            let z = if t <= 0.0 {
                0.0
            } else {
                newton_bracketed(g, 0.0, z_max * (1.0 + 1e-12), 1e-15 * z_max, 200)
                    .unwrap_or(f64::NAN)
            };
            rho(z).hypot(z)
        };
        let derivative = move |t: f64| {
            let f = value(t);
            let u = (f * t.sin() - p.b) / p.a;
            let sh = u.sinh();
            let f_f = t.cos() - sh * t.sin();
            let f_t = -f * t.sin() - sh * f * t.cos();
            -f_t / f_f
        };
        RadialProfile::closed_form(0.0, p.delta, value, derivative)
    }
}

fn residuals(delta: f64, alpha: f64, a: f64, b: f64) -> (f64, f64) {
    let r1 = a * (b / a).cosh() - 1.0;
    let r2 = a * ((alpha * delta.sin() - b) / a).cosh() - alpha * delta.cos();
    (r1, r2)
}

fn check_inputs(delta: f64, alpha: f64) -> Result<()> {
    if !(delta > 0.0 && delta < std::f64::consts::FRAC_PI_4) {
        return Err(Error::Domain(format!(
            "δ must lie in (0, pi/4), got {delta}"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("α must lie in (0, 1), got {alpha}")));
    }
    Ok(())
}

/// Offset `b = a arccosh(1/a) > 0` from the first boundary condition.
fn offset(a: f64) -> f64 {
    a * (1.0 / a).acosh()
}

/// The second boundary condition with `b` eliminated, as
/// `ln(a cosh u) - ln(α cos δ)`; sign-equivalent to the residual and free
/// of overflow for tiny `a`.
fn log_mismatch(delta: f64, alpha: f64, a: f64) -> f64 {
    let u = ((alpha * delta.sin() - offset(a)) / a).abs();
    let ln_cosh = u + (-2.0 * u).exp().ln_1p() - std::f64::consts::LN_2;
    a.ln() + ln_cosh - (alpha * delta.cos()).ln()
}

/// Solves the boundary conditions for the catenoid parameters `(a, b)`.
///
/// Damped Newton from the asymptotic seed `a ≈ αδ/(-ln α)`; the root must
/// be the largest one in `(0, α cos δ)` (where the mismatch increases
/// through zero). Falls back to a bracketed search on that branch.
pub fn solve_catenoid(delta: f64, alpha: f64) -> Result<CatenoidParams> {
    check_inputs(delta, alpha)?;
    let a_max = alpha * delta.cos();
    if let Some(p) = damped_newton(delta, alpha) {
        if p.a < a_max && on_outer_branch(delta, alpha, p.a) {
            return Ok(p);
        }
    }
    bracketed_solve(delta, alpha)
}

fn on_outer_branch(delta: f64, alpha: f64, a: f64) -> bool {
    let h = 1e-6 * a;
    log_mismatch(delta, alpha, a + h) > log_mismatch(delta, alpha, a - h)
}

fn damped_newton(delta: f64, alpha: f64) -> Option<CatenoidParams> {
    let sd = delta.sin();
    let mut a = alpha * delta / -alpha.ln();
    if a >= 1.0 {
        return None;
    }
    let mut b = offset(a);
    let norm = |(r1, r2): (f64, f64)| r1.abs().max(r2.abs());
    let mut res = residuals(delta, alpha, a, b);
    for _ in 0..MAX_ITER {
        if norm(res) < RESIDUAL_TOL {
            return Some(CatenoidParams { delta, alpha, a, b });
        }
        let v = b / a;
        let u = (alpha * sd - b) / a;
        let j11 = v.cosh() - v * v.sinh();
        let j12 = v.sinh();
        let j21 = u.cosh() - u * u.sinh();
        let j22 = -u.sinh();
        let det = j11 * j22 - j12 * j21;
        if !det.is_finite() || det == 0.0 {
            return None;
        }
        let da = -(res.0 * j22 - res.1 * j12) / det;
        let db = -(j11 * res.1 - j21 * res.0) / det;
        let mut scale = 1.0;
        loop {
            let (na, nb) = (a + scale * da, b + scale * db);
            if na > 0.0 && nb.is_finite() {
                let nres = residuals(delta, alpha, na, nb);
                if norm(nres).is_finite() && norm(nres) < norm(res) {
                    a = na;
                    b = nb;
                    res = nres;
                    break;
                }
            }
            scale *= DAMPING;
            if scale < 1e-12 {
                return None;
            }
        }
    }
    (norm(res) < RESIDUAL_TOL).then_some(CatenoidParams { delta, alpha, a, b })
}

fn bracketed_solve(delta: f64, alpha: f64) -> Result<CatenoidParams> {
    let a_max = alpha * delta.cos();
    // scan downward from a_max for the first sign change from + to -
    let grid: Vec<f64> = (0..=400)
        .map(|k| a_max * (1e-12f64).powf(k as f64 / 400.0))
        .collect();
    let g = |a: f64| log_mismatch(delta, alpha, a);
    for w in grid.windows(2) {
        let (hi, lo) = (w[0], w[1]);
        if g(hi) > 0.0 && g(lo) < 0.0 {
            let h = |a: f64| {
                let e = 1e-7 * a;
                (g(a), (g(a + e) - g(a - e)) / (2.0 * e))
            };
            let a = newton_bracketed(h, lo, hi, 1e-16 * hi, 200)?;
            let p = CatenoidParams {
                delta,
                alpha,
                a,
                b: offset(a),
            };
            let (r1, r2) = p.residuals();
            if r1.abs().max(r2.abs()) > RESIDUAL_TOL {
                return Err(Error::NonConvergence {
                    method: "catenoid solve",
                    residual: r1.abs().max(r2.abs()),
                });
            }
            return Ok(p);
        }
    }
    Err(Error::NoSolution(format!(
        "no catenoid joins the circles for δ = {delta}, α = {alpha}"
    )))
}

/// Closed-form area `½ L0 (sqrt(1 - a^2) - α^2 cos δ cos(δ + arcsin(a/(α cos δ))))`.
pub fn catenoid_area_closed_form(params: &CatenoidParams, l0: f64) -> Result<f64> {
    let CatenoidParams {
        delta, alpha, a, ..
    } = *params;
    let ratio = a / (alpha * delta.cos());
    if !(-1.0..=1.0).contains(&ratio) {
        return Err(Error::Domain(format!(
            "arcsin argument {ratio} is out of range"
        )));
    }
    Ok(0.5
        * l0
        * ((1.0 - a * a).sqrt() - alpha * alpha * delta.cos() * (delta + ratio.asin()).cos()))
}

//! The exponential competitor: `f = e^{-μθ}` on `[0, δ]` and
//! `f = α e^{-λ g(θ)}` on `[δ, pi/2]`, with `μ = -ln α/δ` and
//! `g(θ) = ∫_δ^θ dt/sqrt(cos^{2-2n} t - 1)`.
//!
//! Near the threshold the area deficit `1/n - S` is far below double
//! resolution, so values carry the deficit scaled by `n/δ^2` in signed
//! logarithmic form alongside `ln δ`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConeSpace;
use crate::quadrature::{integrate, QuadratureConfig};
use crate::radial::RadialProfile;

/// Split point for the `1/(sqrt(n-1) t)` singularity of `g'`.
const T0: f64 = 0.5;
const SERIES_DELTA: f64 = 1e-4;
const GEOMETRIC_NODES: usize = 160;
const UNIFORM_NODES: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sec5Competitor {
    pub space: ConeSpace,
    pub delta: f64,
    pub alpha: f64,
    pub mu: f64,
}

impl Sec5Competitor {
    pub fn new(space: ConeSpace, delta: f64, alpha: f64) -> Result<Self> {
        check_inputs(delta, alpha)?;
        Ok(Self {
            space,
            delta,
            alpha,
            mu: -alpha.ln() / delta,
        })
    }

    /// The assembled piecewise profile on `[0, pi/2]`.
    pub fn profile(&self, cfg: &QuadratureConfig) -> Result<RadialProfile> {
        let Self {
            space,
            delta,
            alpha,
            mu,
        } = *self;
        let n = space.n();
        let lambda = space.lambda();
        let head = RadialProfile::closed_form(
            0.0,
            delta,
            move |t| (-mu * t).exp(),
            move |t| -mu * (-mu * t).exp(),
        )?;

        let mut nodes = Vec::new();
        if delta < T0 {
            let ratio = (T0 / delta).ln();
            nodes.extend(
                (0..GEOMETRIC_NODES)
                    .map(|k| delta * (ratio * k as f64 / GEOMETRIC_NODES as f64).exp()),
            );
            nodes.extend(
                (0..=UNIFORM_NODES)
                    .map(|k| T0 + (FRAC_PI_2 - T0) * k as f64 / UNIFORM_NODES as f64),
            );
        } else {
            nodes.extend(
                (0..=UNIFORM_NODES)
                    .map(|k| delta + (FRAC_PI_2 - delta) * k as f64 / UNIFORM_NODES as f64),
            );
        }
        nodes[0] = delta;
        let last = nodes.len() - 1;
        nodes[last] = FRAC_PI_2;

        let mut g = vec![0.0];
        for w in nodes.windows(2) {
            let step = integrate(|t| g_rate(n, t), w[0], w[1], cfg)?.value;
            g.push(g[g.len() - 1] + step);
        }
        let values: Vec<f64> = g.iter().map(|gi| alpha * (-lambda * gi).exp()).collect();
        let d1: Vec<f64> = nodes
            .iter()
            .zip(&values)
            .map(|(&t, f)| -lambda * g_rate(n, t) * f)
            .collect();
        let d2: Vec<f64> = nodes
            .iter()
            .zip(&values)
            .map(|(&t, f)| {
                let r = g_rate(n, t);
                f * (lambda * lambda * r * r - lambda * g_rate_derivative(n, t))
            })
            .collect();
        let tail = RadialProfile::sampled_hermite(nodes, values, d1, Some(d2))?;
        RadialProfile::piecewise(vec![head, tail])
    }
}

fn check_inputs(delta: f64, alpha: f64) -> Result<()> {
    if !(delta > 0.0 && delta < FRAC_PI_2) {
        return Err(Error::Domain(format!(
            "δ must lie in (0, pi/2), got {delta}"
        )));
    }
    check_alpha(alpha)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("α must lie in (0, 1), got {alpha}")));
    }
    Ok(())
}

/// `cos^{2-2n} t - 1` without cancellation at small `t`.
fn secant_excess(n: u32, t: f64) -> f64 {
    let s = (0.5 * t).sin();
    let ln_cos = (-2.0 * s * s).ln_1p();
    (-(2.0 * f64::from(n) - 2.0) * ln_cos).exp_m1()
}

/// `g'(t) = 1/sqrt(cos^{2-2n} t - 1)`.
fn g_rate(n: u32, t: f64) -> f64 {
    1.0 / secant_excess(n, t).sqrt()
}

fn g_rate_derivative(n: u32, t: f64) -> f64 {
    let q = secant_excess(n, t);
    let k = 2.0 * f64::from(n) - 2.0;
    // q' = k cos^{1-2n} t sin t = k (q + 1) tan t
    -0.5 * k * (q + 1.0) * t.tan() / (q * q.sqrt())
}

/// `g(pi/2)` for the junction `δ = e^{-neg_ln_delta}`; valid after `δ`
/// underflows.
pub fn g_half_pi(n: u32, neg_ln_delta: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let delta = (-neg_ln_delta).exp();
    if n == 2 {
        // g = ln(sin t / sin δ)
        let ln_sinc = if delta < SERIES_DELTA {
            -delta * delta / 6.0
        } else {
            (delta.sin() / delta).ln()
        };
        return Ok(neg_ln_delta - ln_sinc);
    }
    if delta >= T0 {
        return Ok(integrate(|t| g_rate(n, t), delta, FRAC_PI_2, cfg)?.value);
    }
    let root = (f64::from(n) - 1.0).sqrt();
    let head = integrate(|t| g_rate(n, t) - 1.0 / (root * t), delta, T0, cfg)?.value;
    let tail = integrate(|t| g_rate(n, t), T0, FRAC_PI_2, cfg)?.value;
    Ok((neg_ln_delta + T0.ln()) / root + head + tail)
}

/// A competitor area `S` near `1/n`, stored through the scaled deficit
/// `m = n(1/n - S)/δ^2 = sign · e^{ln_abs}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sec5Value {
    pub n: u32,
    pub ln_delta: f64,
    pub sign: f64,
    pub ln_abs: f64,
}

impl Sec5Value {
    fn from_difference(n: u32, ln_delta: f64, ln_pos: f64, neg: f64) -> Self {
        let (sign, ln_abs) = signed_log_difference(ln_pos, neg);
        Self {
            n,
            ln_delta,
            sign,
            ln_abs,
        }
    }

    /// `S`, rounded to double precision; equals `1/n` once the deficit
    /// drops below resolution.
    pub fn value(&self) -> f64 {
        1.0 / f64::from(self.n) - self.deficit()
    }

    /// `1/n - S`.
    pub fn deficit(&self) -> f64 {
        self.sign * (self.ln_abs + 2.0 * self.ln_delta - f64::from(self.n).ln()).exp()
    }

    /// `ln(1/n - S)` when the competitor beats the cone.
    pub fn ln_deficit(&self) -> Option<f64> {
        self.beats_cone()
            .then(|| self.ln_abs + 2.0 * self.ln_delta - f64::from(self.n).ln())
    }

    /// `n(1/n - S)/δ^2`, saturating at the largest finite double.
    pub fn scaled_deficit(&self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp().min(f64::MAX)
        }
    }

    pub fn beats_cone(&self) -> bool {
        self.sign > 0.0
    }

    /// Total order for the search: beating points first, larger deficit
    /// first; then smaller excess.
    pub fn score(&self) -> (bool, f64) {
        let ln = self.ln_abs + 2.0 * self.ln_delta;
        if self.beats_cone() {
            (true, ln)
        } else if self.sign == 0.0 {
            (false, f64::INFINITY)
        } else {
            (false, -ln)
        }
    }
}

/// `(sign, ln|e^{ln_pos} - neg|)` for `neg` finite of either sign.
fn signed_log_difference(ln_pos: f64, neg: f64) -> (f64, f64) {
    if ln_pos == f64::NEG_INFINITY {
        return if neg == 0.0 {
            (0.0, f64::NEG_INFINITY)
        } else {
            (-neg.signum(), neg.abs().ln())
        };
    }
    if neg <= 0.0 {
        if neg == 0.0 {
            return (1.0, ln_pos);
        }
        let lb = (-neg).ln();
        let (hi, lo) = if ln_pos > lb {
            (ln_pos, lb)
        } else {
            (lb, ln_pos)
        };
        return (1.0, hi + (lo - hi).exp().ln_1p());
    }
    let lb = neg.ln();
    if ln_pos > lb {
        (1.0, ln_pos + (-(lb - ln_pos).exp()).ln_1p())
    } else if ln_pos < lb {
        (-1.0, lb + (-(ln_pos - lb).exp()).ln_1p())
    } else {
        (0.0, f64::NEG_INFINITY)
    }
}

/// `ln sin δ` for `δ = e^{-neg_ln_delta}`.
fn ln_sin_delta(neg_ln_delta: f64) -> f64 {
    let delta = (-neg_ln_delta).exp();
    if delta < SERIES_DELTA {
        -neg_ln_delta - delta * delta / 6.0
    } else {
        delta.sin().ln()
    }
}

/// The closed-form upper bound on `S` of the competitor,
/// `(1/n)(1-α^n) sqrt(1 + λ^2δ^2/ln^2 α) + (1/n)α^n - (1/n)α^n (sin δ)^{nλ/sqrt(n-1)}`.
pub fn sec5_bound(space: &ConeSpace, delta: f64, alpha: f64) -> f64 {
    let n = f64::from(space.n());
    let lambda = space.lambda();
    let an = alpha.powf(n);
    let la = alpha.ln();
    let p = n * lambda / (n - 1.0).sqrt();
    ((1.0 - an) * (1.0 + (lambda * delta / la).powi(2)).sqrt() + an - an * delta.sin().powf(p)) / n
}

/// The same bound as [`sec5_bound`], parametrized by `-ln δ` and kept in
/// scaled logarithmic form.
pub fn sec5_bound_log(space: &ConeSpace, neg_ln_delta: f64, alpha: f64) -> Result<Sec5Value> {
    check_log_inputs(neg_ln_delta, alpha)?;
    let n = f64::from(space.n());
    let lambda = space.lambda();
    let la = alpha.ln();
    let delta = (-neg_ln_delta).exp();
    let p = n * lambda / (n - 1.0).sqrt();
    // n/δ^2 · [(1/n) α^n (sin δ)^p] and n/δ^2 · [(1/n)(1-α^n)(sqrt(1+x) - 1)]
    let ln_gain = n * la + p * ln_sin_delta(neg_ln_delta) + 2.0 * neg_ln_delta;
    let x = (lambda * delta / la).powi(2);
    let loss = -(n * la).exp_m1() * (lambda / la).powi(2) / ((1.0 + x).sqrt() + 1.0);
    Ok(Sec5Value::from_difference(
        space.n(),
        -neg_ln_delta,
        ln_gain,
        loss,
    ))
}

fn check_log_inputs(neg_ln_delta: f64, alpha: f64) -> Result<()> {
    if !(neg_ln_delta > -FRAC_PI_2.ln() && neg_ln_delta.is_finite()) {
        return Err(Error::Domain(format!(
            "-ln δ must exceed -ln(pi/2), got {neg_ln_delta}"
        )));
    }
    check_alpha(alpha)
}

/// `S` of the assembled competitor by quadrature.
pub fn sec5_area_numeric(
    space: &ConeSpace,
    delta: f64,
    alpha: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_inputs(delta, alpha)?;
    Ok(sec5_area_numeric_log(space, -delta.ln(), alpha, cfg)?.value())
}

/// `S` of the assembled competitor by quadrature, in scaled logarithmic
/// form.
///
/// Uses the exact rearrangement
/// `1/n - S = ∫_0^1 [ℓ(1 - c^{n-1}) - (sqrt(ℓ^2 + λ^2δ^2) - ℓ) c^{n-1}] α^{nu} du + (α^n/n) e^{-nλ g(pi/2)}`
/// with `ℓ = -ln α` and `c = cos δu`, which is free of the cancellation
/// in `1/n - S`.
pub fn sec5_area_numeric_log(
    space: &ConeSpace,
    neg_ln_delta: f64,
    alpha: f64,
    cfg: &QuadratureConfig,
) -> Result<Sec5Value> {
    check_log_inputs(neg_ln_delta, alpha)?;
    let n = space.n();
    let nf = f64::from(n);
    let k = nf - 1.0;
    let lambda = space.lambda();
    let ell = -alpha.ln();
    let delta = (-neg_ln_delta).exp();
    let root = (ell * ell + (lambda * delta).powi(2)).sqrt();
    // (1 - cos^k x)/δ^2 at x = δu
    let one_minus_cos = |u: f64| {
        if delta < SERIES_DELTA {
            let x2 = u * u;
            k * x2 / 2.0 - k * (3.0 * k - 2.0) * x2 * x2 * delta * delta / 24.0
        } else {
            let s = (0.5 * delta * u).sin();
            -(k * (-2.0 * s * s).ln_1p()).exp_m1() / (delta * delta)
        }
    };
    let cos_pow = |u: f64| {
        if delta < SERIES_DELTA {
            1.0 - delta * delta * one_minus_cos(u)
        } else {
            (delta * u).cos().powf(k)
        }
    };
    let body = integrate(
        |u| {
            let w = (-nf * ell * u).exp();
            (ell * one_minus_cos(u) - lambda * lambda * cos_pow(u) / (root + ell)) * w
        },
        0.0,
        1.0,
        cfg,
    )?
    .value;
    let g = g_half_pi(n, neg_ln_delta, cfg)?;
    // n/δ^2 · (α^n/n) e^{-nλg}
    let ln_tail = -nf * ell - nf * lambda * g + 2.0 * neg_ln_delta;
    Ok(Sec5Value::from_difference(
        n,
        -neg_ln_delta,
        ln_tail,
        -nf * body,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::s_functional;

    fn space(n: u32, l: f64) -> ConeSpace {
        ConeSpace::new(n, l).unwrap()
    }

    #[test]
    fn bound_examples() {
        let s = space(2, 0.9);
        let b = sec5_bound(&s, 0.001, 0.5);
        assert!(b < 0.5 && (0.5 - b - 1.8155e-7).abs() < 1e-10, "{b}");
        assert!(sec5_bound(&s, 0.05, 0.5) > 0.5);
        assert!((sec5_bound(&s, 0.05, 0.5) - 0.50022).abs() < 1e-5);
    }

    #[test]
    fn log_form_agrees_with_direct_bound() {
        for (n, l, d, a) in [
            (2, 0.9, 0.001, 0.5),
            (3, 0.9, 0.01, 0.3),
            (5, 0.79, 0.2, 0.7),
            (4, 0.95, 0.05, 0.1),
        ] {
            let s = space(n, l);
            let direct = 1.0 / f64::from(n) - sec5_bound(&s, d, a);
            let logv = sec5_bound_log(&s, -f64::ln(d), a).unwrap();
            assert!(
                (logv.deficit() - direct).abs() < 1e-13,
                "{n} {l}: {} vs {direct}",
                logv.deficit()
            );
        }
    }

    #[test]
    fn log_form_resolves_tiny_deficits() {
        let s = space(2, 0.99);
        let v = sec5_bound_log(&s, 60.0, 0.45).unwrap();
        assert!(v.beats_cone());
        assert_eq!(v.value(), 0.5);
        assert!(v.ln_deficit().unwrap() < -100.0);
        let w = sec5_bound_log(&s, 40.0, 0.45).unwrap();
        assert!(!w.beats_cone());
    }

    #[test]
    fn g_half_pi_matches_direct_quadrature() {
        let cfg = QuadratureConfig::default();
        for n in [2, 3, 6] {
            for d in [0.01, 0.3, 0.8] {
                let direct = integrate(|t| g_rate(n, t), d, FRAC_PI_2, &cfg)
                    .unwrap()
                    .value;
                let v = g_half_pi(n, -f64::ln(d), &cfg).unwrap();
                assert!((v - direct).abs() < 1e-9, "n={n} δ={d}: {v} vs {direct}");
            }
        }
    }

    #[test]
    fn numeric_matches_literal_functional() {
        let cfg = QuadratureConfig::default();
        for (n, l, d, a) in [(2, 0.9, 0.01, 0.5), (3, 0.9, 0.02, 0.3), (4, 0.8, 0.3, 0.6)] {
            let s = space(n, l);
            let comp = Sec5Competitor::new(s, d, a).unwrap();
            let f = comp.profile(&cfg).unwrap();
            let literal = s_functional(&f, &s, &cfg).unwrap().value;
            let numeric = sec5_area_numeric(&s, d, a, &cfg).unwrap();
            assert!(
                (literal - numeric).abs() < 1e-9,
                "{n}: {literal} vs {numeric}"
            );
            assert!(numeric <= sec5_bound(&s, d, a) + 1e-12);
        }
    }

    #[test]
    fn profile_is_continuous_at_junction() {
        let cfg = QuadratureConfig::default();
        let comp = Sec5Competitor::new(space(3, 0.9), 0.01, 0.4).unwrap();
        assert!(((-comp.mu * comp.delta).exp() - 0.4).abs() < 1e-15);
        let f = comp.profile(&cfg).unwrap();
        assert!((f.value(0.01 - 1e-15) - f.value(0.01 + 1e-15)).abs() < 1e-12);
    }

    #[test]
    fn signed_differences() {
        let (s, l) = signed_log_difference(2f64.ln(), 1.0);
        assert_eq!(s, 1.0);
        assert!(l.abs() < 1e-15);
        let (s, l) = signed_log_difference(0.0, 3.0);
        assert_eq!(s, -1.0);
        assert!((l - 2f64.ln()).abs() < 1e-15);
        let (s, l) = signed_log_difference(0.0, -1.0);
        assert_eq!(s, 1.0);
        assert!((l - 2f64.ln()).abs() < 1e-15);
    }
}

//! Scalar root finding: Newton steps safeguarded by a sign-changing bracket.

use crate::error::{Error, Result};

/// Finds a root of `f` in `[lo, hi]`, where `f_df` returns `(f(x), f'(x))`.
///
/// The endpoints must bracket a sign change. Newton steps that leave the
/// bracket or fail to halve it are replaced by bisection.
pub fn newton_bracketed<F>(
    f_df: F,
    mut lo: f64,
    mut hi: f64,
    x_tol: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (f_lo, _) = f_df(lo);
    let (f_hi, _) = f_df(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Domain(format!(
            "root not bracketed on [{lo:e}, {hi:e}] (f = {f_lo:e}, {f_hi:e})"
        )));
    }
    // orient so that f(lo) < 0
    if f_lo > 0.0 {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut x = 0.5 * (lo + hi);
    let mut dx_old = (hi - lo).abs();
    let mut dx = dx_old;
    let (mut fx, mut dfx) = f_df(x);
    for _ in 0..max_iter {
        let newton_ok = dfx != 0.0 && {
            let step = x - fx / dfx;
            (step - lo) * (step - hi) < 0.0 && (2.0 * fx).abs() < (dx_old * dfx).abs()
        };
        dx_old = dx;
        if newton_ok {
            dx = fx / dfx;
            x -= dx;
        } else {
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        }
        if dx.abs() < x_tol {
            return Ok(x);
        }
        let (f_new, df_new) = f_df(x);
        fx = f_new;
        dfx = df_new;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if (hi - lo).abs() < x_tol {
            return Ok(x);
        }
    }
    Err(Error::NonConvergence {
        method: "bracketed Newton",
        residual: fx.abs(),
    })
}

//! Dormand–Prince 5(4) steps for three-component systems.

pub(crate) type State = [f64; 3];

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

pub(crate) struct Step {
    pub y: State,
    /// Derivative at the end of the step.
    pub dy: State,
    /// Scaled error estimate; the step is acceptable when this is at most 1.
    pub error: f64,
}

fn combine(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (i, v) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (w, k) in terms {
            acc += w * k[i];
        }
        *v += h * acc;
    }
    out
}

/// One step of size `h` from `(x, y)` with `k1 = f(x, y)` precomputed.
/// Returns `None` when the right-hand side leaves its domain at some stage.
pub(crate) fn dopri_step<F>(f: &F, x: f64, y: &State, k1: &State, h: f64, tol: f64) -> Option<Step>
where
    F: Fn(f64, &State) -> Option<State>,
{
    let k2 = f(x + C2 * h, &combine(y, h, &[(A21, k1)]))?;
    let k3 = f(x + C3 * h, &combine(y, h, &[(A31, k1), (A32, &k2)]))?;
    let k4 = f(
        x + C4 * h,
        &combine(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]),
    )?;
    let k5 = f(
        x + C5 * h,
        &combine(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
    )?;
    let k6 = f(
        x + h,
        &combine(
            y,
            h,
            &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ),
    )?;
    let y_new = combine(
        y,
        h,
        &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
    );
    if y_new.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let k7 = f(x + h, &y_new)?;
    let mut error: f64 = 0.0;
    for i in 0..3 {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let scale = tol * (1.0 + y[i].abs().max(y_new[i].abs()));
        error = error.max(e.abs() / scale);
    }
    Some(Step {
        y: y_new,
        dy: k7,
        error,
    })
}

/// Step-size factor after a step with scaled error `err`.
pub(crate) fn step_factor(err: f64) -> f64 {
    if err == 0.0 {
        5.0
    } else {
        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
    }
}

/// Cubic Hermite interpolation on `[x0, x1]`.
pub(crate) fn hermite(x0: f64, x1: f64, y0: f64, y1: f64, d0: f64, d1: f64, x: f64) -> f64 {
    let h = x1 - x0;
    let s = (x - x0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0) * y0
        + (s3 - 2.0 * s2 + s) * h * d0
        + (-2.0 * s3 + 3.0 * s2) * y1
        + (s3 - s2) * h * d1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_exponential_to_tolerance() {
        let f = |_x: f64, y: &State| Some([y[0], -y[1], 2.0 * y[2]]);
        let mut x = 0.0;
        let mut y = [1.0, 1.0, 1.0];
        let mut h: f64 = 0.01;
        let tol = 1e-12;
        while x < 1.0 {
            let k1 = f(x, &y).unwrap();
            let h_try = h.min(1.0 - x);
            let step = dopri_step(&f, x, &y, &k1, h_try, tol).unwrap();
            if step.error <= 1.0 {
                x += h_try;
                y = step.y;
            }
            h = h_try * step_factor(step.error);
        }
        let e = 1f64.exp();
        assert!((y[0] - e).abs() < 1e-10);
        assert!((y[1] - 1.0 / e).abs() < 1e-10);
        assert!((y[2] - e * e).abs() < 1e-9);
    }

    #[test]
    fn fifth_order_convergence() {
        let f = |x: f64, _y: &State| Some([x.cos(), 0.0, 0.0]);
        let run = |n: usize| {
            let h = 1.0 / n as f64;
            let mut y = [0.0; 3];
            for i in 0..n {
                let x = i as f64 * h;
                let k1 = f(x, &y).unwrap();
                y = dopri_step(&f, x, &y, &k1, h, 1.0).unwrap().y;
            }
            (y[0] - 1f64.sin()).abs()
        };
        let ratio = run(4) / run(8);
        assert!(ratio > 25.0, "ratio {ratio}");
    }

    #[test]
    fn hermite_is_exact_for_cubics() {
        let p = |x: f64| x * x * x - 2.0 * x;
        let dp = |x: f64| 3.0 * x * x - 2.0;
        let v = hermite(0.5, 2.0, p(0.5), p(2.0), dp(0.5), dp(2.0), 1.3);
        assert!((v - p(1.3)).abs() < 1e-14);
    }
}

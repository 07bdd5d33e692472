//! Piecewise Hermite interpolation on strictly increasing nodes.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Interpolant {
    x: Vec<f64>,
    y: Vec<f64>,
    dy: Vec<f64>,
    /// Second derivatives switch the segments to quintic Hermite.
    d2y: Option<Vec<f64>>,
}

impl Interpolant {
    pub fn hermite(x: Vec<f64>, y: Vec<f64>, dy: Vec<f64>, d2y: Option<Vec<f64>>) -> Result<Self> {
        if x.len() < 2 {
            return Err(Error::Precondition(
                "an interpolant needs at least two nodes".into(),
            ));
        }
        if y.len() != x.len()
            || dy.len() != x.len()
            || d2y.as_ref().is_some_and(|s| s.len() != x.len())
        {
            return Err(Error::Precondition("node arrays differ in length".into()));
        }
        for (i, w) in x.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::Parse {
                    line: i + 2,
                    message: format!(
                        "abscissae must be strictly increasing ({} then {})",
                        w[0], w[1]
                    ),
                });
            }
        }
        let finite = |v: &[f64]| v.iter().all(|z| z.is_finite());
        if !finite(&x) || !finite(&y) || !finite(&dy) || d2y.as_deref().is_some_and(|s| !finite(s))
        {
            return Err(Error::Precondition(
                "interpolation nodes must be finite".into(),
            ));
        }
        Ok(Self { x, y, dy, d2y })
    }

    /// Natural cubic spline through the nodes.
    pub fn natural_spline(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(Error::Precondition(
                "a spline needs at least two nodes of matching length".into(),
            ));
        }
        if n == 2 {
            let slope = (y[1] - y[0]) / (x[1] - x[0]);
            return Self::hermite(x, y, vec![slope; 2], None);
        }
        for (i, w) in x.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::Parse {
                    line: i + 2,
                    message: format!(
                        "abscissae must be strictly increasing ({} then {})",
                        w[0], w[1]
                    ),
                });
            }
        }
        // Thomas algorithm for the second derivatives m_i with m_0 = m_{n-1} = 0.
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let mut diag = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        let mut upper = vec![0.0; n];
        diag[0] = 1.0;
        diag[n - 1] = 1.0;
        for i in 1..n - 1 {
            let lower = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            upper[i] = h[i];
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
            let w = lower / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        for i in (1..n - 1).rev() {
            m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        }
        let mut dy = vec![0.0; n];
        for i in 0..n - 1 {
            dy[i] = (y[i + 1] - y[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
        }
        dy[n - 1] = (y[n - 1] - y[n - 2]) / h[n - 2] + h[n - 2] * (m[n - 2] + 2.0 * m[n - 1]) / 6.0;
        Self::hermite(x, y, dy, None)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn lo(&self) -> f64 {
        self.x[0]
    }

    pub fn hi(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    fn segment(&self, t: f64) -> usize {
        let idx = self.x.partition_point(|&xi| xi <= t);
        idx.clamp(1, self.x.len() - 1) - 1
    }

    /// Value and first derivative at `t`; NaN outside the node range.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        if !(t >= self.lo() && t <= self.hi()) {
            return (f64::NAN, f64::NAN);
        }
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let (y0, y1, d0, d1) = (self.y[i], self.y[i + 1], self.dy[i], self.dy[i + 1]);
        match &self.d2y {
            None => {
                let s2 = s * s;
                let s3 = s2 * s;
                let v = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
                    + (s3 - 2.0 * s2 + s) * h * d0
                    + (-2.0 * s3 + 3.0 * s2) * y1
                    + (s3 - s2) * h * d1;
                let dv = ((6.0 * s2 - 6.0 * s) * y0
                    + (3.0 * s2 - 4.0 * s + 1.0) * h * d0
                    + (-6.0 * s2 + 6.0 * s) * y1
                    + (3.0 * s2 - 2.0 * s) * h * d1)
                    / h;
                (v, dv)
            }
            Some(d2) => {
                let (c0, c1) = (d2[i], d2[i + 1]);
                let s2 = s * s;
                let s3 = s2 * s;
                let s4 = s3 * s;
                let s5 = s4 * s;
                let h2 = h * h;
                let v = (1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5) * y0
                    + (s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5) * h * d0
                    + 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5) * h2 * c0
                    + (10.0 * s3 - 15.0 * s4 + 6.0 * s5) * y1
                    + (-4.0 * s3 + 7.0 * s4 - 3.0 * s5) * h * d1
                    + 0.5 * (s3 - 2.0 * s4 + s5) * h2 * c1;
                let dv = ((-30.0 * s2 + 60.0 * s3 - 30.0 * s4) * y0
                    + (1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4) * h * d0
                    + 0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4) * h2 * c0
                    + (30.0 * s2 - 60.0 * s3 + 30.0 * s4) * y1
                    + (-12.0 * s2 + 28.0 * s3 - 15.0 * s4) * h * d1
                    + 0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4) * h2 * c1)
                    / h;
                (v, dv)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spline_reproduces_linear_data() {
        let x = vec![0.0, 0.5, 1.5, 2.0];
        let y: Vec<f64> = x.iter().map(|t| 3.0 * t - 1.0).collect();
        let s = Interpolant::natural_spline(x, y).unwrap();
        for t in [0.0, 0.2, 0.9, 1.7, 2.0] {
            let (v, d) = s.eval(t);
            assert!((v - (3.0 * t - 1.0)).abs() < 1e-14);
            assert!((d - 3.0).abs() < 1e-13);
        }
        assert!(s.eval(2.1).0.is_nan());
    }

    #[test]
    fn quintic_hermite_is_exact_for_quintics() {
        let p = |t: f64| 1.0 + t - 2.0 * t.powi(3) + 0.5 * t.powi(5);
        let dp = |t: f64| 1.0 - 6.0 * t * t + 2.5 * t.powi(4);
        let d2p = |t: f64| -12.0 * t + 10.0 * t.powi(3);
        let x = vec![0.0, 0.7, 1.3];
        let it = Interpolant::hermite(
            x.clone(),
            x.iter().map(|&t| p(t)).collect(),
            x.iter().map(|&t| dp(t)).collect(),
            Some(x.iter().map(|&t| d2p(t)).collect()),
        )
        .unwrap();
        for t in [0.1, 0.4, 0.69, 1.0, 1.29] {
            let (v, d) = it.eval(t);
            assert!((v - p(t)).abs() < 1e-13, "{t}");
            assert!((d - dp(t)).abs() < 1e-12, "{t}");
        }
    }

    #[test]
    fn rejects_non_increasing_nodes() {
        let err =
            Interpolant::natural_spline(vec![0.0, 1.0, 1.0], vec![1.0, 2.0, 3.0]).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}

use std::fmt;
use std::io::{BufRead, Write};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::interp::Interpolant;
use crate::error::{Error, Result};

/// A scalar function of one variable shared across threads.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

const CONTINUITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    ClosedForm,
    Sampled,
    Piecewise,
}

#[derive(Clone)]
enum Repr {
    ClosedForm { f: ScalarFn, df: ScalarFn },
    Sampled(Interpolant),
    Piecewise(Vec<RadialProfile>),
}

/// A positive profile `f` over an interval of polar angle (or of distance
/// to the equator), describing a rotationally symmetric hypersurface
/// `r = f(angle)`.
#[derive(Clone)]
pub struct RadialProfile {
    lo: f64,
    hi: f64,
    repr: Repr,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("kind", &self.kind())
            .field("domain", &(self.lo, self.hi))
            .field("breakpoints", &self.breakpoints().len())
            .finish()
    }
}

impl RadialProfile {
    /// A closed-form profile from `f` and its derivative `df`.
    pub fn closed_form<F, D>(lo: f64, hi: f64, f: F, df: D) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_interval(lo, hi)?;
        let profile = Self {
            lo,
            hi,
            repr: Repr::ClosedForm {
                f: Arc::new(f),
                df: Arc::new(df),
            },
        };
        // probe positivity on the interior
        for k in 1..16 {
            let t = lo + (hi - lo) * k as f64 / 16.0;
            let v = profile.value(t);
            if !(v > 0.0) {
                return Err(Error::Precondition(format!(
                    "profile must be positive, f({t}) = {v}"
                )));
            }
        }
        Ok(profile)
    }

    pub fn constant(c: f64, lo: f64, hi: f64) -> Result<Self> {
        Self::closed_form(lo, hi, move |_| c, |_| 0.0)
    }

    /// Sampled profile interpolated by a natural cubic spline.
    pub fn sampled(angles: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_positive(&values)?;
        let it = Interpolant::natural_spline(angles, values)?;
        Ok(Self {
            lo: it.lo(),
            hi: it.hi(),
            repr: Repr::Sampled(it),
        })
    }

    /// Sampled profile with known derivatives at the nodes. Supplying second
    /// derivatives upgrades the segments from cubic to quintic Hermite.
    pub fn sampled_hermite(
        angles: Vec<f64>,
        values: Vec<f64>,
        derivatives: Vec<f64>,
        second_derivatives: Option<Vec<f64>>,
    ) -> Result<Self> {
        check_positive(&values)?;
        let it = Interpolant::hermite(angles, values, derivatives, second_derivatives)?;
        Ok(Self {
            lo: it.lo(),
            hi: it.hi(),
            repr: Repr::Sampled(it),
        })
    }

    /// Concatenates contiguous pieces; adjacent pieces must agree at the
    /// shared endpoint.
    pub fn piecewise(pieces: Vec<RadialProfile>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Precondition(
                "piecewise profile needs at least one piece".into(),
            ));
        }
        for w in pieces.windows(2) {
            let (left, right) = (&w[0], &w[1]);
            if left.hi != right.lo {
                return Err(Error::Precondition(format!(
                    "pieces are not contiguous: {} then {}",
                    left.hi, right.lo
                )));
            }
            let a = left.value(left.hi);
            let b = right.value(right.lo);
            if (a - b).abs() > CONTINUITY_TOL * a.abs().max(1.0) {
                return Err(Error::Precondition(format!(
                    "profile jumps at {}: {a} vs {b}",
                    left.hi
                )));
            }
        }
        let lo = pieces[0].lo;
        let hi = pieces[pieces.len() - 1].hi;
        Ok(Self {
            lo,
            hi,
            repr: Repr::Piecewise(pieces),
        })
    }

    pub fn kind(&self) -> ProfileKind {
        match self.repr {
            Repr::ClosedForm { .. } => ProfileKind::ClosedForm,
            Repr::Sampled(_) => ProfileKind::Sampled,
            Repr::Piecewise(_) => ProfileKind::Piecewise,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Interior points where the profile may fail to be smooth: piece
    /// junctions and interpolation nodes.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_breaks(&mut out);
        out.retain(|&t| t > self.lo && t < self.hi);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    fn collect_breaks(&self, out: &mut Vec<f64>) {
        match &self.repr {
            Repr::ClosedForm { .. } => {}
            Repr::Sampled(it) => out.extend_from_slice(it.nodes()),
            Repr::Piecewise(pieces) => {
                for p in pieces {
                    out.push(p.lo);
                    out.push(p.hi);
                    p.collect_breaks(out);
                }
            }
        }
    }

    fn piece_at(&self, t: f64) -> Option<&RadialProfile> {
        match &self.repr {
            Repr::Piecewise(pieces) => {
                // right-continuous except at the far end
                let idx = pieces.partition_point(|p| p.hi <= t).min(pieces.len() - 1);
                Some(&pieces[idx])
            }
            _ => None,
        }
    }

    /// `f(t)`; NaN outside the domain.
    pub fn value(&self, t: f64) -> f64 {
        if !(t >= self.lo && t <= self.hi) {
            return f64::NAN;
        }
        match &self.repr {
            Repr::ClosedForm { f, .. } => f(t),
            Repr::Sampled(it) => it.eval(t).0,
            Repr::Piecewise(_) => self.piece_at(t).map_or(f64::NAN, |p| p.value(t)),
        }
    }

    /// `f'(t)`, right-sided at interior breakpoints; NaN outside the domain.
    pub fn derivative(&self, t: f64) -> f64 {
        if !(t >= self.lo && t <= self.hi) {
            return f64::NAN;
        }
        match &self.repr {
            Repr::ClosedForm { df, .. } => df(t),
            Repr::Sampled(it) => it.eval(t).1,
            Repr::Piecewise(_) => self.piece_at(t).map_or(f64::NAN, |p| p.derivative(t)),
        }
    }

    /// The dilated profile `c * f`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!(
                "scale factor must be positive, got {c}"
            )));
        }
        let this = self.clone();
        let that = self.clone();
        Ok(Self {
            lo: self.lo,
            hi: self.hi,
            repr: Repr::ClosedForm {
                f: Arc::new(move |t| c * this.value(t)),
                df: Arc::new(move |t| c * that.derivative(t)),
            },
        })
    }

    /// Reads the two-column `(angle, f)` text format. Blank lines and lines
    /// starting with `#` are skipped; columns may be separated by whitespace
    /// or commas.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut angles = Vec::new();
        let mut values = Vec::new();
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
            if let Some(&prev) = angles.last() {
                if !(cols[0] > prev) {
                    return Err(Error::Parse {
                        line: idx + 1,
                        message: format!(
                            "angles must be strictly increasing ({prev} then {})",
                            cols[0]
                        ),
                    });
                }
            }
            angles.push(cols[0]);
            values.push(cols[1]);
        }
        Self::sampled(angles, values)
    }

    /// Writes `samples` equally spaced `(angle, f)` rows.
    pub fn write_text<W: Write>(&self, mut out: W, samples: usize) -> Result<()> {
        let samples = samples.max(2);
        for k in 0..samples {
            let t = if k + 1 == samples {
                self.hi
            } else {
                self.lo + (self.hi - self.lo) * k as f64 / (samples - 1) as f64
            };
            writeln!(out, "{:.17e} {:.17e}", t, self.value(t))?;
        }
        Ok(())
    }

    /// Writes the interpolation nodes of a sampled profile verbatim.
    pub fn write_nodes<W: Write>(&self, mut out: W) -> Result<()> {
        match &self.repr {
            Repr::Sampled(it) => {
                for (t, v) in it.nodes().iter().zip(it.values()) {
                    writeln!(out, "{t:.17e} {v:.17e}")?;
                }
                Ok(())
            }
            _ => Err(Error::Precondition(
                "only sampled profiles have nodes".into(),
            )),
        }
    }
}

pub(crate) fn parse_columns(line: &str, line_no: usize) -> Result<Vec<f64>> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>().map_err(|e| Error::Parse {
                line: line_no,
                message: format!("{s:?}: {e}"),
            })
        })
        .collect()
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "invalid profile domain [{lo}, {hi}]"
        )))
    }
}

fn check_positive(values: &[f64]) -> Result<()> {
    match values.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
        Some(i) => Err(Error::Precondition(format!(
            "profile value #{i} is not positive: {}",
            values[i]
        ))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piecewise_evaluation_and_breakpoints() {
        let a = RadialProfile::closed_form(0.0, 0.5, |t| 1.0 - t, |_| -1.0).unwrap();
        let b = RadialProfile::constant(0.5, 0.5, 1.0).unwrap();
        let p = RadialProfile::piecewise(vec![a, b]).unwrap();
        assert_eq!(p.kind(), ProfileKind::Piecewise);
        assert_eq!(p.breakpoints(), vec![0.5]);
        assert_eq!(p.value(0.25), 0.75);
        assert_eq!(p.derivative(0.25), -1.0);
        assert_eq!(p.derivative(0.5), 0.0);
        assert_eq!(p.value(1.0), 0.5);
        assert!(p.value(1.1).is_nan());
    }

    #[test]
    fn discontinuous_pieces_rejected() {
        let a = RadialProfile::constant(1.0, 0.0, 0.5).unwrap();
        let b = RadialProfile::constant(0.9, 0.5, 1.0).unwrap();
        assert!(matches!(
            RadialProfile::piecewise(vec![a, b]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn non_positive_profiles_rejected() {
        assert!(RadialProfile::constant(-1.0, 0.0, 1.0).is_err());
        assert!(RadialProfile::sampled(vec![0.0, 1.0], vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn text_round_trip_of_nodes() {
        let p = RadialProfile::sampled(vec![0.0, 0.4, 1.0], vec![1.0, 0.8, 0.7]).unwrap();
        let mut buf = Vec::new();
        p.write_nodes(&mut buf).unwrap();
        let q = RadialProfile::read_text(std::io::Cursor::new(buf)).unwrap();
        for t in [0.0, 0.1, 0.55, 1.0] {
            assert_eq!(p.value(t), q.value(t));
        }
    }

    #[test]
    fn reader_reports_offending_line() {
        let text = "# theta f\n0.0 1.0\n0.5, 0.9\n0.5 0.8\n";
        match RadialProfile::read_text(std::io::Cursor::new(text)) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        let bad = "0.0 1.0 3.0\n";
        assert!(matches!(
            RadialProfile::read_text(std::io::Cursor::new(bad)),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}

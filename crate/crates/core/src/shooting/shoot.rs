use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ode::{dopri_step, hermite, step_factor, State};
use super::{cot, h_rhs_unchecked, initial_slope};
use crate::error::{Error, Result};
use crate::geometry::ConeSpace;
use crate::radial::RadialProfile;

/// Switch to `H` as the independent variable once `H'` drops below
/// `-SWITCH_SLOPE`, and back once it rises above `-RETURN_SLOPE`.
const SWITCH_SLOPE: f64 = 2.0;
const RETURN_SLOPE: f64 = 0.5;
/// Trial stages in the `H` variable are rejected when `H'` is this flat.
const FLAT_SLOPE: f64 = 1e-3;
const MIN_STEP: f64 = 1e-15;
/// Factor and cap for widening the end gap once bisection runs out of digits.
const GAP_GROWTH: f64 = 4.0;
const MAX_END_GAP: f64 = 0.02;
const CROSSING_ITERATIONS: usize = 4;
/// Integration past the end gap stops here.
const LAST_THETA: f64 = FRAC_PI_2 - 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StepConfig {
    /// Local error tolerance (mixed absolute/relative).
    pub tol: f64,
    /// `H <= h_floor` counts as reaching the floor `H = 0`.
    pub h_floor: f64,
    /// A solution still inside the domain at `θ = pi/2 - end_gap`, with
    /// `H'` within 50% of its limit `λ`, is classified as extending; the
    /// remaining gap follows the regular branch `pi/2 - H ~ λ(pi/2 - θ)`.
    /// Rounding in `H0` is amplified like `(pi/2 - θ)^-n` near the end, so
    /// the gap cannot shrink much below `1e-16^(1/n)`.
    pub end_gap: f64,
    pub max_steps: usize,
}

impl Default for StepConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            h_floor: 1e-9,
            end_gap: 1e-4,
            max_steps: 200_000,
        }
    }
}

impl StepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Domain(format!(
                "step tolerance must lie in (0, 1), got {}",
                self.tol
            )));
        }
        if !(self.h_floor > 0.0 && self.h_floor < 0.1) {
            return Err(Error::Domain(format!(
                "H floor must lie in (0, 0.1), got {}",
                self.h_floor
            )));
        }
        if !(self.end_gap > 0.0 && self.end_gap < 0.1) {
            return Err(Error::Domain(format!(
                "end gap must lie in (0, 0.1), got {}",
                self.end_gap
            )));
        }
        if self.max_steps == 0 {
            return Err(Error::Domain("max_steps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub theta: f64,
    pub h: f64,
    /// `dH/dθ`.
    pub dh: f64,
    pub ln_f: f64,
    /// Running value of the normalized area functional.
    pub s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExitKind {
    ExtendsToHalfPi,
    ExitsAtFloor { theta: f64 },
    ExitsAtCeiling { theta: f64 },
    StalledNumeric { theta: f64, h: f64, reason: String },
}

impl ExitKind {
    pub fn exit_angle(&self) -> Option<f64> {
        match self {
            Self::ExitsAtFloor { theta } | Self::ExitsAtCeiling { theta } => Some(*theta),
            _ => None,
        }
    }

    fn same_class(&self, other: &Self) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShootingOutcome {
    pub h0: f64,
    pub kind: ExitKind,
    pub trajectory: Vec<TrajectoryPoint>,
    /// `f(pi/2)` for extending solutions.
    pub f_end: Option<f64>,
    /// Error bound on the exit angle, from a rerun at a hundredth of the
    /// tolerance.
    pub theta_error: Option<f64>,
    pub steps: usize,
    pub rejected: usize,
}

impl ShootingOutcome {
    pub fn extends(&self) -> bool {
        self.kind == ExitKind::ExtendsToHalfPi
    }

    /// Value of the normalized functional accumulated along the trajectory.
    pub fn s_accumulated(&self) -> f64 {
        self.trajectory.last().map_or(0.0, |p| p.s)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    /// Independent variable θ, state `(H, ln f, S)`.
    Theta,
    /// Independent variable H, state `(θ, ln f, S)`.
    Angle,
}

/// Integrates from `H(0) = h0` and classifies how the solution leaves the
/// domain `0 < θ < pi/2, 0 < H < pi/2`, with an error bound on the exit
/// angle.
pub fn shoot(space: &ConeSpace, h0: f64, cfg: &StepConfig) -> Result<ShootingOutcome> {
    let mut out = shoot_once(space, h0, cfg)?;
    if let Some(theta) = out.kind.exit_angle() {
        let fine = shoot_once(
            space,
            h0,
            &StepConfig {
                tol: cfg.tol / 100.0,
                ..*cfg
            },
        )?;
        out.theta_error = Some(match fine.kind.exit_angle() {
            Some(t) if fine.kind.same_class(&out.kind) => {
                2.0 * (t - theta).abs() + 4.0 * f64::EPSILON * theta
            }
            _ => FRAC_PI_2,
        });
    }
    Ok(out)
}

/// A single integration at the configured tolerance, without the error
/// estimate.
pub fn shoot_once(space: &ConeSpace, h0: f64, cfg: &StepConfig) -> Result<ShootingOutcome> {
    cfg.validate()?;
    if !(h0 > 0.0 && h0 <= FRAC_PI_2) {
        return Err(Error::Domain(format!(
            "initial angle must lie in (0, pi/2], got {h0}"
        )));
    }
    let n = space.n();
    let nf = f64::from(n);
    let lambda = space.lambda();
    let theta_end = FRAC_PI_2 - cfg.end_gap;

    let area_rate = move |theta: f64, h: f64, ln_f: f64| {
        lambda * (nf * ln_f).exp() * theta.cos().powi(n as i32 - 1) / h.sin()
    };
    let rhs_theta = move |theta: f64, u: &State| -> Option<State> {
        let h = u[0];
        if !(h > 0.0 && h < PI) || !(theta < FRAC_PI_2) {
            return None;
        }
        let out = [
            h_rhs_unchecked(theta, h, n, lambda),
            -lambda * cot(h),
            area_rate(theta, h, u[1]),
        ];
        out.iter().all(|v| v.is_finite()).then_some(out)
    };
    let rhs_angle = move |h: f64, u: &State| -> Option<State> {
        let theta = u[0];
        if !(h > 0.0 && h < PI) || !(0.0..FRAC_PI_2).contains(&theta) {
            return None;
        }
        let dh = h_rhs_unchecked(theta, h, n, lambda);
        if !(dh < -FLAT_SLOPE) {
            return None;
        }
        let out = [
            1.0 / dh,
            -lambda * cot(h) / dh,
            area_rate(theta, h, u[1]) / dh,
        ];
        out.iter().all(|v| v.is_finite()).then_some(out)
    };

    let mut trajectory = vec![TrajectoryPoint {
        theta: 0.0,
        h: h0,
        dh: nf * lambda,
        ln_f: 0.0,
        s: 0.0,
    }];
    let finish = |kind: ExitKind, trajectory: Vec<TrajectoryPoint>, f_end, steps, rejected| {
        Ok(ShootingOutcome {
            h0,
            kind,
            trajectory,
            f_end,
            theta_error: None,
            steps,
            rejected,
        })
    };
    if h0 == FRAC_PI_2 {
        // H' = nλ > 0 at the ceiling itself
        return finish(
            ExitKind::ExitsAtCeiling { theta: 0.0 },
            trajectory,
            None,
            0,
            0,
        );
    }

    let mut mode = Mode::Theta;
    let mut target = theta_end;
    let mut theta = 0.0;
    let mut h = h0;
    let mut ln_f = 0.0;
    let mut s = 0.0;
    let mut step = 1e-3 * h0.min(1.0);
    let mut steps = 0;
    let mut rejected = 0;

    while steps + rejected < cfg.max_steps {
        match mode {
            Mode::Theta => {
                let u = [h, ln_f, s];
                let k1 = rhs_theta(theta, &u).ok_or_else(|| internal("left the domain"))?;
                let dx = step.min(target - theta);
                let trial = dopri_step(&rhs_theta, theta, &u, &k1, dx, cfg.tol);
                let factor = trial.as_ref().map_or(0.25, |st| step_factor(st.error));
                let Some(st) = trial.filter(|st| st.error <= 1.0) else {
                    rejected += 1;
                    step = dx * factor;
                    if step < MIN_STEP * (1.0 + theta) {
                        return finish(
                            stalled(theta, h, "step underflow in θ"),
                            trajectory,
                            None,
                            steps,
                            rejected,
                        );
                    }
                    continue;
                };
                steps += 1;
                let theta1 = theta + dx;
                let (h1, ln_f1, s1) = (st.y[0], st.y[1], st.y[2]);
                let crossing = if h1 >= FRAC_PI_2 {
                    Some(FRAC_PI_2)
                } else if h1 <= cfg.h_floor {
                    Some(cfg.h_floor)
                } else {
                    None
                };
                if let Some(level) = crossing {
                    let mut t_star = locate(theta, theta1, h, h1, k1[0], st.dy[0], level);
                    let at = |i: usize, t: f64| {
                        hermite(theta, theta1, u[i], st.y[i], k1[i], st.dy[i], t)
                    };
                    let mut y_star = [level, at(1, t_star), at(2, t_star)];
                    // Newton on the crossing with partial steps from the last accepted point
                    for _ in 0..CROSSING_ITERATIONS {
                        let Some(part) =
                            dopri_step(&rhs_theta, theta, &u, &k1, t_star - theta, cfg.tol)
                        else {
                            break;
                        };
                        y_star = part.y;
                        let next = (t_star - (part.y[0] - level) / part.dy[0]).clamp(theta, theta1);
                        if !next.is_finite() || next == t_star {
                            break;
                        }
                        t_star = next;
                    }
                    trajectory.push(TrajectoryPoint {
                        theta: t_star,
                        h: level,
                        dh: h_rhs_unchecked(t_star, level, n, lambda),
                        ln_f: y_star[1],
                        s: y_star[2],
                    });
                    let kind = if level == FRAC_PI_2 {
                        ExitKind::ExitsAtCeiling { theta: t_star }
                    } else {
                        ExitKind::ExitsAtFloor { theta: t_star }
                    };
                    return finish(kind, trajectory, None, steps, rejected);
                }
                theta = theta1;
                h = h1;
                ln_f = ln_f1;
                s = s1;
                trajectory.push(TrajectoryPoint {
                    theta,
                    h,
                    dh: st.dy[0],
                    ln_f,
                    s,
                });
                if theta >= target {
                    // on the regular branch H' -> λ; the singular branches
                    // leave through the floor or the ceiling
                    let settled = (st.dy[0] / lambda - 1.0).abs() <= 0.5;
                    if target == theta_end && settled {
                        let last = extend_tail(&mut trajectory, lambda, nf, cfg.end_gap);
                        return finish(
                            ExitKind::ExtendsToHalfPi,
                            trajectory,
                            Some(last.ln_f.exp()),
                            steps,
                            rejected,
                        );
                    }
                    if target == theta_end {
                        target = LAST_THETA;
                    } else {
                        return finish(
                            stalled(theta, h, "reached pi/2 off the regular branch"),
                            trajectory,
                            None,
                            steps,
                            rejected,
                        );
                    }
                }
                step = dx * step_factor(st.error);
                if st.dy[0] < -SWITCH_SLOPE {
                    mode = Mode::Angle;
                    step *= -st.dy[0];
                }
            }
            Mode::Angle => {
                let u = [theta, ln_f, s];
                let Some(k1) = rhs_angle(h, &u) else {
                    mode = Mode::Theta;
                    continue;
                };
                let dx = step.min(h - cfg.h_floor);
                let trial = dopri_step(&rhs_angle, h, &u, &k1, -dx, cfg.tol);
                let factor = trial.as_ref().map_or(0.25, |st| step_factor(st.error));
                let Some(st) = trial.filter(|st| st.error <= 1.0) else {
                    rejected += 1;
                    step = dx * factor;
                    if step < MIN_STEP * h {
                        return finish(
                            stalled(theta, h, "step underflow in H"),
                            trajectory,
                            None,
                            steps,
                            rejected,
                        );
                    }
                    continue;
                };
                steps += 1;
                h -= dx;
                ln_f = st.y[1];
                s = st.y[2];
                let dh = 1.0 / st.dy[0];
                let point = TrajectoryPoint {
                    theta: st.y[0],
                    h,
                    dh,
                    ln_f,
                    s,
                };
                if st.y[0] > theta {
                    trajectory.push(point);
                } else if let Some(last) = trajectory.last_mut() {
                    // θ no longer resolves the step; keep the latest state
                    *last = TrajectoryPoint {
                        theta: last.theta,
                        ..point
                    };
                }
                theta = st.y[0];
                if h <= cfg.h_floor * (1.0 + 1e-12) {
                    let t = trajectory.last().map_or(theta, |p| p.theta);
                    return finish(
                        ExitKind::ExitsAtFloor { theta: t },
                        trajectory,
                        None,
                        steps,
                        rejected,
                    );
                }
                step = dx * step_factor(st.error);
                if dh > -RETURN_SLOPE {
                    mode = Mode::Theta;
                    step /= -dh;
                }
            }
        }
    }
    finish(
        stalled(theta, h, "step budget exhausted"),
        trajectory,
        None,
        steps,
        rejected,
    )
}

fn internal(msg: &str) -> Error {
    Error::Domain(format!("shooting state {msg}"))
}

fn stalled(theta: f64, h: f64, reason: &str) -> ExitKind {
    ExitKind::StalledNumeric {
        theta,
        h,
        reason: reason.to_string(),
    }
}

/// Where the cubic Hermite interpolant of `H` on `[t0, t1]` reaches `level`.
fn locate(t0: f64, t1: f64, h0: f64, h1: f64, d0: f64, d1: f64, level: f64) -> f64 {
    let g = |t: f64| hermite(t0, t1, h0, h1, d0, d1, t) - level;
    let (mut a, mut b) = (t0, t1);
    let up = g(a) < 0.0;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (g(m) < 0.0) == up {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Closes the final gap with the regular branch `pi/2 - H = k (pi/2 - θ)`.
fn extend_tail(
    trajectory: &mut Vec<TrajectoryPoint>,
    lambda: f64,
    n: f64,
    gap: f64,
) -> TrajectoryPoint {
    let last = *trajectory.last().expect("trajectory is never empty");
    let k = (FRAC_PI_2 - last.h) / gap;
    let ln_f = last.ln_f - 0.5 * lambda * k * gap * gap;
    let s = last.s + lambda * (n * ln_f).exp() * gap.powf(n) / n;
    let end = TrajectoryPoint {
        theta: FRAC_PI_2,
        h: FRAC_PI_2,
        dh: k,
        ln_f,
        s,
    };
    trajectory.push(end);
    end
}

/// The profile `f` with `f(0) = 1` and `f'/f = -λ cot H` along a computed
/// trajectory, as a quintic Hermite interpolant through the steps.
pub fn reconstruct_f(outcome: &ShootingOutcome, space: &ConeSpace) -> Result<RadialProfile> {
    let pts = &outcome.trajectory;
    if pts.len() < 2 {
        return Err(Error::Precondition(
            "trajectory has fewer than two points".into(),
        ));
    }
    let lambda = space.lambda();
    if let Some(p) = pts[1..pts.len() - 1]
        .iter()
        .find(|p| !(p.h > 0.0 && p.h < PI) || p.h <= 1e-300)
    {
        return Err(Error::Domain(format!(
            "trajectory touches H = 0 at θ = {}",
            p.theta
        )));
    }
    let end = pts[pts.len() - 1];
    if !(end.h > 0.0) {
        return Err(Error::Domain(format!(
            "trajectory ends on H = 0 at θ = {}",
            end.theta
        )));
    }
    let mut theta = Vec::with_capacity(pts.len());
    let mut f = Vec::with_capacity(pts.len());
    let mut df = Vec::with_capacity(pts.len());
    let mut d2f = Vec::with_capacity(pts.len());
    for p in pts {
        let v = p.ln_f.exp();
        let c = cot(p.h);
        let sin = p.h.sin();
        theta.push(p.theta);
        f.push(v);
        df.push(-lambda * c * v);
        d2f.push(v * (lambda * lambda * c * c + lambda * p.dh / (sin * sin)));
    }
    RadialProfile::sampled_hermite(theta, f, df, Some(d2f))
}

/// Writes `θ H f` columns, one line per step.
pub fn write_trajectory<W: Write>(outcome: &ShootingOutcome, mut out: W) -> Result<()> {
    writeln!(out, "# theta H f")?;
    for p in &outcome.trajectory {
        writeln!(out, "{:.17e} {:.17e} {:.17e}", p.theta, p.h, p.ln_f.exp())?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendingShot {
    pub h0: f64,
    /// Boundary slope `A = f'(0)`.
    pub slope: f64,
    /// Final floor/ceiling bracket around `h0`.
    pub bracket: (f64, f64),
    pub shots: usize,
    pub outcome: ShootingOutcome,
}

/// Bisects on the initial angle between a floor exit and a ceiling exit
/// until a shot extends to `pi/2`.
///
/// Without a bracket, one is located on a logarithmic grid of initial angles
/// shot in parallel. Bisection stops once the bracket is narrower than
/// `h0_tol` relative (or cannot be split further); the end points are then
/// reclassified with the end gap widened fourfold at a time, up to 0.02.
pub fn find_extending(
    space: &ConeSpace,
    bracket: Option<(f64, f64)>,
    h0_tol: f64,
    cfg: &StepConfig,
) -> Result<ExtendingShot> {
    cfg.validate()?;
    let mut shots = 0;
    let (mut lo, mut hi) = match bracket {
        Some((a, b)) if a > 0.0 && a < b && b <= FRAC_PI_2 => (a, b),
        Some((a, b)) => {
            return Err(Error::Domain(format!(
                "invalid initial-angle bracket ({a}, {b})"
            )))
        }
        None => {
            let grid: Vec<f64> = (0..=64)
                .map(|k| 1e-10 * (FRAC_PI_2 * (1.0 - 1e-6) / 1e-10).powf(k as f64 / 64.0))
                .collect();
            let results: Vec<Result<ShootingOutcome>> = grid
                .par_iter()
                .map(|&h0| shoot_once(space, h0, cfg))
                .collect();
            shots += grid.len();
            let mut found = None;
            for (i, r) in results.iter().enumerate() {
                let r = r.as_ref().map_err(Clone::clone)?;
                if r.extends() {
                    return Ok(ExtendingShot {
                        h0: r.h0,
                        slope: initial_slope(r.h0, space.lambda()),
                        bracket: (r.h0, r.h0),
                        shots,
                        outcome: r.clone(),
                    });
                }
                if i + 1 < results.len() {
                    if let (Ok(a), Ok(b)) = (&results[i], &results[i + 1]) {
                        if matches!(a.kind, ExitKind::ExitsAtFloor { .. })
                            && matches!(b.kind, ExitKind::ExitsAtCeiling { .. })
                        {
                            found = Some((grid[i], grid[i + 1]));
                            break;
                        }
                    }
                }
            }
            found.ok_or_else(|| {
                Error::NoSolution(format!(
                    "no floor-to-ceiling transition among initial angles for n = {}, λ = {}",
                    space.n(),
                    space.lambda()
                ))
            })?
        }
    };
    let classify = |h0: f64, cfg: &StepConfig| -> Result<ShootingOutcome> {
        let r = shoot_once(space, h0, cfg)?;
        if let ExitKind::StalledNumeric { reason, .. } = &r.kind {
            return Err(Error::NoSolution(format!(
                "shot from H0 = {h0} stalled: {reason}"
            )));
        }
        Ok(r)
    };
    if bracket.is_some() {
        let a = classify(lo, cfg)?;
        let b = classify(hi, cfg)?;
        shots += 2;
        for r in [&a, &b] {
            if r.extends() {
                return Ok(ExtendingShot {
                    h0: r.h0,
                    slope: initial_slope(r.h0, space.lambda()),
                    bracket: (lo, hi),
                    shots,
                    outcome: r.clone(),
                });
            }
        }
        if !matches!(a.kind, ExitKind::ExitsAtFloor { .. })
            || !matches!(b.kind, ExitKind::ExitsAtCeiling { .. })
        {
            return Err(Error::NoSolution(format!(
                "bracket ({lo}, {hi}) does not separate a floor exit from a ceiling exit"
            )));
        }
    }
    let mut cfg = *cfg;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= h0_tol * hi {
            // both ends are as close to the regular branch as H0 resolves;
            // judge them further from pi/2
            let wider = cfg.end_gap * GAP_GROWTH;
            if wider > MAX_END_GAP {
                return Err(Error::NoSolution(format!(
                    "bisection closed on H0 in ({lo:e}, {hi:e}) without an extending shot"
                )));
            }
            cfg.end_gap = wider;
            for h0 in [lo, hi] {
                let r = classify(h0, &cfg)?;
                shots += 1;
                if r.extends() {
                    return Ok(ExtendingShot {
                        h0,
                        slope: initial_slope(h0, space.lambda()),
                        bracket: (lo, hi),
                        shots,
                        outcome: r,
                    });
                }
            }
            continue;
        }
        let r = classify(mid, &cfg)?;
        shots += 1;
        match r.kind {
            ExitKind::ExtendsToHalfPi => {
                return Ok(ExtendingShot {
                    h0: mid,
                    slope: initial_slope(mid, space.lambda()),
                    bracket: (lo, hi),
                    shots,
                    outcome: r,
                })
            }
            ExitKind::ExitsAtFloor { .. } => lo = mid,
            ExitKind::ExitsAtCeiling { .. } => hi = mid,
            ExitKind::StalledNumeric { .. } => {
                unreachable!("stalled shots are reported by classify")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: u32, l: f64) -> ConeSpace {
        ConeSpace::new(n, l).unwrap()
    }

    #[test]
    fn ceiling_start_exits_immediately() {
        let out = shoot(&space(3, 0.95), FRAC_PI_2, &StepConfig::default()).unwrap();
        assert_eq!(out.kind, ExitKind::ExitsAtCeiling { theta: 0.0 });
    }

    #[test]
    fn tiny_initial_angle_falls_to_floor() {
        let out = shoot(&space(2, 0.5), 1e-6, &StepConfig::default()).unwrap();
        match out.kind {
            ExitKind::ExitsAtFloor { theta } => assert!(theta < 1e-4, "θ* = {theta}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(out.theta_error.unwrap() < 1e-8);
    }

    #[test]
    fn widens_end_gap_when_bisection_runs_out_of_digits() {
        let shot = find_extending(&space(4, 0.6), None, 0.0, &StepConfig::default()).unwrap();
        assert!(shot.outcome.extends());
        assert!(shot.bracket.1 - shot.bracket.0 <= 4.0 * f64::EPSILON * shot.bracket.1);
    }

    #[test]
    fn rejects_bad_initial_angles() {
        let cfg = StepConfig::default();
        assert!(shoot(&space(3, 0.9), 0.0, &cfg).is_err());
        assert!(shoot(&space(3, 0.9), 2.0, &cfg).is_err());
    }

    #[test]
    fn synthetic_flat_trajectory_gives_constant_profile() {
        let pts = (0..=10)
            .map(|k| TrajectoryPoint {
                theta: 0.1 * k as f64,
                h: FRAC_PI_2,
                dh: 0.0,
                ln_f: 0.0,
                s: 0.0,
            })
            .collect();
        let out = ShootingOutcome {
            h0: FRAC_PI_2,
            kind: ExitKind::ExtendsToHalfPi,
            trajectory: pts,
            f_end: Some(1.0),
            theta_error: None,
            steps: 10,
            rejected: 0,
        };
        let f = reconstruct_f(&out, &space(3, 0.5)).unwrap();
        for t in [0.0, 0.33, 0.77, 1.0] {
            assert_eq!(f.value(t), 1.0);
        }
    }

    #[test]
    fn dump_has_three_columns() {
        let out = shoot(&space(3, 0.95), 0.5, &StepConfig::default()).unwrap();
        let mut buf = Vec::new();
        write_trajectory(&out, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body.len(), out.trajectory.len());
        assert!(body.iter().all(|l| l.split_whitespace().count() == 3));
    }
}

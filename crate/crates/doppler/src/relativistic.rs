//! Relativistic Doppler: vacuum, media, per-period averages, uniform
//! acceleration, circular motion and moving media.

use serde::{Deserialize, Serialize};

use crate::classical::{circular_doppler, CircleGeometry, CircularMode, DopplerSample, ObserverSolver};
use crate::error::{domain, ensure_positive, numeric, Result};
use crate::numeric::{adaptive_simpson, newton_bisect, widen_bracket};

/// Per-period motion averages of one node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotionAverages {
    /// Average velocity along the source-observer line, receding positive (m/s)
    pub v_line: f64,
    /// Average speed used for time dilation (m/s)
    pub speed_mag: f64,
}

impl MotionAverages {
    pub const REST: MotionAverages = MotionAverages { v_line: 0.0, speed_mag: 0.0 };

    pub fn new(v_line: f64, speed_mag: f64) -> Result<Self> {
        if !(speed_mag >= 0.0) || v_line.abs() > speed_mag * (1.0 + 1e-12) {
            return domain(format!("|v_line| = {} exceeds speed_mag = {speed_mag}", v_line.abs()));
        }
        Ok(Self { v_line, speed_mag })
    }

    /// Motion purely along the line. Transverse motion is invisible here:
    /// pass an explicit `speed_mag` through [`MotionAverages::new`] for it.
    pub fn line_only(v_line: f64) -> Self {
        Self { v_line, speed_mag: v_line.abs() }
    }
}

/// Propagation medium. `flow_speed` is along the line from source to
/// observer (positive drags the wave toward the observer).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumSpec {
    /// Vacuum light speed used for time dilation (m/s)
    pub c: f64,
    #[serde(default = "one")]
    pub refractive_index: f64,
    #[serde(default)]
    pub flow_speed: f64,
}

fn one() -> f64 {
    1.0
}

impl MediumSpec {
    pub fn vacuum(c: f64) -> Self {
        Self { c, refractive_index: 1.0, flow_speed: 0.0 }
    }

    pub fn with_index(c: f64, n: f64) -> Self {
        Self { c, refractive_index: n, flow_speed: 0.0 }
    }

    pub fn with_wave_speed(c: f64, wave_speed: f64) -> Self {
        Self { c, refractive_index: c / wave_speed, flow_speed: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("c", self.c)?;
        if !(self.refractive_index >= 1.0) {
            return domain(format!("refractive index must be >= 1, got {}", self.refractive_index));
        }
        if !(self.flow_speed.abs() < self.c) {
            return domain("medium flow speed must be below c");
        }
        Ok(())
    }

    /// Wave speed in the medium's rest frame, `c / n`.
    pub fn rest_wave_speed(&self) -> f64 {
        self.c / self.refractive_index
    }

    /// Wave speed seen in the lab, including relativistic drag by the flow.
    pub fn wave_speed(&self) -> f64 {
        if self.flow_speed == 0.0 {
            self.rest_wave_speed()
        } else {
            moving_medium_speed_unchecked(self)
        }
    }
}

fn gamma_inv(speed: f64, c: f64) -> f64 {
    let b = speed / c;
    ((1.0 - b) * (1.0 + b)).sqrt()
}

/// Vacuum longitudinal Doppler; `v > 0` is recession. Returns `f'`.
pub fn longitudinal_shift(v: f64, f: f64, c: f64) -> Result<f64> {
    if !(v.abs() < c) {
        return domain("|v| must be below c");
    }
    let b = v / c;
    Ok(f * ((1.0 - b) / (1.0 + b)).sqrt())
}

/// `f'` for uniform motion in a medium; see [`general_motion_shift`].
pub fn medium_uniform_shift(src: &MotionAverages, obs: &MotionAverages, medium: &MediumSpec, f: f64) -> Result<f64> {
    general_motion_shift(src, obs, medium, f)
}

/// `f' = f (1 - v_obs/c') / (1 + v_src/c') * sqrt(1 - b_src^2) / sqrt(1 - b_obs^2)`.
///
/// Line velocities are receding positive for both nodes; speeds for the
/// dilation factors use the vacuum `c`.
pub fn general_motion_shift(src: &MotionAverages, obs: &MotionAverages, medium: &MediumSpec, f: f64) -> Result<f64> {
    medium.validate()?;
    let c = medium.c;
    let cw = medium.wave_speed();
    for (name, m) in [("source", src), ("observer", obs)] {
        if !(m.speed_mag < c) {
            return domain(format!("{name} speed must be below c"));
        }
        if !(m.v_line.abs() < cw) {
            return domain(format!("{name} line speed must be below the wave speed"));
        }
    }
    let num = 1.0 - obs.v_line / cw;
    let den = 1.0 + src.v_line / cw;
    Ok(f * (num / den) * gamma_inv(src.speed_mag, c) / gamma_inv(obs.speed_mag, c))
}

/// Velocity under constant proper acceleration, `w / sqrt(1 + w^2/c^2)` with `w = v0 + a t`.
pub fn rel_accel_velocity(v0: f64, a: f64, t: f64, c: f64) -> f64 {
    let x = (v0 + a * t) / c;
    c * x / (1.0 + x * x).sqrt()
}

/// Averaging window for [`rel_accel_average_velocity`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AveragingSpan {
    /// Window length `T` (s)
    Period(f64),
    /// Distance `H` with `T = sqrt(2 H / a)` (m)
    Distance(f64),
}

/// Average velocity over `[t, t + T]` for constant proper acceleration.
pub fn rel_accel_average_velocity(v0: f64, a: f64, t: f64, span: AveragingSpan, c: f64) -> Result<MotionAverages> {
    ensure_positive("c", c)?;
    let period = match span {
        AveragingSpan::Period(p) => p,
        AveragingSpan::Distance(h) => {
            if !(a != 0.0 && h / a > 0.0) {
                return domain("distance form needs h / a > 0");
            }
            (2.0 * h / a).sqrt()
        }
    };
    ensure_positive("averaging period", period)?;
    let x1 = (v0 + a * t) / c;
    let x2 = (v0 + a * (t + period)) / c;
    let s1 = (1.0 + x1 * x1).sqrt();
    let s2 = (1.0 + x2 * x2).sqrt();
    let v_line = c * (x1 + x2) / (s1 + s2);
    let speed_mag = if x1 * x2 >= 0.0 {
        v_line.abs()
    } else {
        adaptive_simpson(|s| rel_accel_velocity(v0, a, s, c).abs(), t, t + period, 1e-12)? / period
    };
    Ok(MotionAverages { v_line, speed_mag: speed_mag.max(v_line.abs()) })
}

/// Coordinate-time length of one source period when its proper clock
/// advances by `period`, from the exact integral of the dilation rate.
pub fn dilated_period_exact(speed: &dyn Fn(f64) -> f64, t: f64, period: f64, c: f64) -> Result<f64> {
    ensure_positive("period", period)?;
    let rate = |s: f64| gamma_inv(speed(s), c);
    let g = |tp: f64| adaptive_simpson(rate, t, t + tp, 1e-12).map(|v| v - period).unwrap_or(f64::NAN);
    let (lo, hi) = widen_bracket(&g, period, 2.0 * period / rate(t).max(1e-300), 60)?;
    newton_bisect(|tp| (g(tp), rate(t + tp)), period / rate(t), lo, hi, 1e-15 * period, 200)
}

/// Placement of the nodes for [`circular_relativistic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelCircularMode {
    /// Source rotates, observer on the rotation axis
    AxisObserver,
    /// Observer rotates, source on the rotation axis
    AxisSource,
    /// Source rotates, observer static in the plane at `(-r0, 0)`
    InPlaneSource,
    /// Observer rotates, source static in the plane at `(-r0, 0)`
    InPlaneObserver,
}

/// Circular motion with the Lorentz factor of the rotating node applied to
/// its clock. The in-plane forms ignore the distance change within one
/// period relative to the wave speed, so they are approximations.
///
/// `t` is the emission epoch for a rotating source and the reception epoch
/// for a rotating observer, both in the rotating node's own time.
#[allow(clippy::too_many_arguments)]
pub fn circular_relativistic(
    radius: f64,
    r0: f64,
    omega: f64,
    t: f64,
    period: f64,
    f: f64,
    medium: &MediumSpec,
    mode: RelCircularMode,
) -> Result<DopplerSample> {
    medium.validate()?;
    ensure_positive("radius", radius)?;
    let c = medium.c;
    let v = radius * omega.abs();
    if !(v < c) {
        return domain("rim speed R*omega must be below c");
    }
    let gi = gamma_inv(v, c);
    let cw = medium.wave_speed();
    match mode {
        RelCircularMode::AxisObserver => Ok(DopplerSample::from_shift(t, f, f * (gi - 1.0))),
        RelCircularMode::AxisSource => Ok(DopplerSample::from_shift(t, f, f * (1.0 / gi - 1.0))),
        RelCircularMode::InPlaneSource => {
            let (tt, pp) = (t / gi, period / gi);
            let g = CircleGeometry { radius, r0, omega };
            let tp = pp + g.range_change(tt, pp) / cw;
            Ok(DopplerSample::from_period_change(t, period, tp - period))
        }
        RelCircularMode::InPlaneObserver => {
            let s = circular_doppler(radius, r0, omega, t / gi, period, cw, CircularMode::ObserverOnCircle, ObserverSolver::SmallRadius)?;
            let tp = s.period_obs * gi;
            if !(tp > 0.0) {
                return numeric("observed period is not positive");
            }
            Ok(DopplerSample::from_period_change(t, period, tp - period))
        }
    }
}

fn moving_medium_speed_unchecked(m: &MediumSpec) -> f64 {
    let n = m.refractive_index;
    (m.c / n - m.flow_speed) / (1.0 - m.flow_speed / (n * m.c))
}

/// Wave speed relative to a source riding a medium that flows at
/// `flow_speed`, `c* = (c/n - v_m) / (1 - v_m / (n c))`.
pub fn moving_medium_wave_speed(medium: &MediumSpec) -> Result<f64> {
    medium.validate()?;
    Ok(moving_medium_speed_unchecked(medium))
}

#[cfg(test)]
mod tests {
    use super::*;

    const C3: f64 = 3e8;

    #[test]
    fn rocket_relativistic_example() {
        let f = 10e9;
        let up = longitudinal_shift(-12e3, f, C3).unwrap() - f;
        let down = longitudinal_shift(12e3, f, C3).unwrap() - f;
        assert!((up - 400_008.0).abs() < 0.5, "{up}");
        assert!((down + 399_992.0).abs() < 0.5, "{down}");
    }

    #[test]
    fn transverse_leo_shift() {
        let m = MediumSpec::vacuum(crate::core::C);
        let sat = MotionAverages::new(0.0, 7.8e3).unwrap();
        let f = 28e9;
        let red = general_motion_shift(&sat, &MotionAverages::REST, &m, f).unwrap() - f;
        let blue = general_motion_shift(&MotionAverages::REST, &sat, &m, f).unwrap() - f;
        assert!((red + 9.48).abs() < 0.02 && (blue - 9.48).abs() < 0.02);
    }

    #[test]
    fn co_moving_nodes_see_no_shift() {
        let m = MediumSpec::vacuum(crate::core::C);
        let v = 2.0e7;
        let src = MotionAverages::line_only(-v);
        let obs = MotionAverages::line_only(v);
        assert_eq!(general_motion_shift(&src, &obs, &m, 5e9).unwrap(), 5e9);
    }

    #[test]
    fn drag_examples() {
        let c = crate::core::C;
        let m = MediumSpec { c, refractive_index: 1.5, flow_speed: 0.1 * c };
        let cs = moving_medium_wave_speed(&m).unwrap() / c;
        assert!((cs - 0.6071).abs() < 1e-4);
        let m = MediumSpec { c, refractive_index: 1.0, flow_speed: 0.3 * c };
        assert!((moving_medium_wave_speed(&m).unwrap() - c).abs() < 1e-6);
    }

    #[test]
    fn axis_modes_are_reciprocal() {
        let c = crate::core::C;
        let m = MediumSpec::vacuum(c);
        let w = 0.1 * c / 1000.0;
        let a = circular_relativistic(1000.0, 0.0, w, 0.0, 1e-9, 1e9, &m, RelCircularMode::AxisObserver).unwrap();
        let b = circular_relativistic(1000.0, 0.0, w, 0.0, 1e-9, 1e9, &m, RelCircularMode::AxisSource).unwrap();
        assert!((a.ratio() - 0.99f64.sqrt()).abs() < 1e-12);
        assert!((a.ratio() * b.ratio() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn average_velocity_limit() {
        let c = crate::core::C;
        let m = rel_accel_average_velocity(0.0, 10.0, 1e9, AveragingSpan::Period(1.0), c).unwrap();
        assert!(m.v_line < c && m.v_line > 0.999 * c);
    }

    #[test]
    fn exact_dilated_period_constant_speed() {
        let c = crate::core::C;
        let tp = dilated_period_exact(&|_| 0.6 * c, 0.0, 1.0, c).unwrap();
        assert!((tp - 1.25).abs() < 1e-12);
    }
}

//! Non-relativistic Doppler: far and close zones, crest-period forms,
//! linear acceleration and circular motion.

use serde::{Deserialize, Serialize};

use crate::core::{crest_interval, Motion};
use crate::error::{domain, ensure_positive, numeric, Result};
use crate::numeric::{newton_bisect, step_settled, widen_bracket};

/// Observed period, frequency and shift at one epoch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DopplerSample {
    /// Epoch (s); emission or reception as documented by the producing operation
    pub t: f64,
    pub period_obs: f64,
    pub freq_obs: f64,
    /// `freq_obs - f`
    pub shift: f64,
}

impl DopplerSample {
    /// Builds a sample from the source period and the change `T' - T`.
    pub fn from_period_change(t: f64, period: f64, change: f64) -> Self {
        let period_obs = period + change;
        Self { t, period_obs, freq_obs: 1.0 / period_obs, shift: -change / (period * period_obs) }
    }

    /// Builds a sample from the source frequency and the shift.
    pub fn from_shift(t: f64, f: f64, shift: f64) -> Self {
        let freq_obs = f + shift;
        Self { t, period_obs: 1.0 / freq_obs, freq_obs, shift }
    }

    /// `f' / f`
    pub fn ratio(&self) -> f64 {
        self.freq_obs / (self.freq_obs - self.shift)
    }
}

/// Plane-wave Doppler for uniform motion.
///
/// `theta_src` is measured from the source velocity to the direction of the
/// receiver (cos = 1: moving toward it); `theta_obs` from the observer
/// velocity to the direction away from the source (cos = 1: receding).
pub fn far_field_shift(v_src: f64, theta_src: f64, v_obs: f64, theta_obs: f64, f: f64, wave_speed: f64) -> Result<DopplerSample> {
    ensure_positive("wave speed", wave_speed)?;
    ensure_positive("frequency", f)?;
    let bs = v_src * theta_src.cos() / wave_speed;
    let bo = v_obs * theta_obs.cos() / wave_speed;
    if 1.0 - bs <= 0.0 {
        return domain("source moves toward the receiver at or above the wave speed");
    }
    if 1.0 - bo <= 0.0 {
        return domain("observer recedes at or above the wave speed");
    }
    Ok(DopplerSample::from_shift(0.0, f, f * (bs - bo) / (1.0 - bs)))
}

/// Which node moves in the close-zone geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mover {
    Source,
    Observer,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CloseZoneConfig {
    /// Source-observer distance when the first crest is emitted (source
    /// moving) or received (observer moving) (m)
    pub r1: f64,
    pub v: f64,
    /// Source moving: angle between velocity and the source-to-observer
    /// line. Observer moving: angle between velocity and the
    /// source-to-observer line (0 = receding).
    pub theta: f64,
    /// Source period (s)
    pub period: f64,
    pub wave_speed: f64,
    pub mover: Mover,
}

impl CloseZoneConfig {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("r1", self.r1)?;
        ensure_positive("period", self.period)?;
        ensure_positive("wave speed", self.wave_speed)?;
        if !(0.0..=std::f64::consts::PI).contains(&self.theta) {
            return domain("theta must lie in [0, pi]");
        }
        if !(self.v > 0.0 && self.v < self.wave_speed) {
            return domain("speed must lie in (0, wave speed)");
        }
        Ok(())
    }
}

/// Close-zone result with the documented small-motion approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloseZoneResult {
    pub sample: DopplerSample,
    /// Approximate `f' / f` from the linearised square root (observer
    /// moving) or from dropping `r1` (source moving)
    pub approx_ratio: f64,
    /// Quadratic coefficients `(a0, a1, a2)` for the observer-moving branch
    pub quadratic: Option<(f64, f64, f64)>,
}

/// Spherical-wave period when source and observer are close.
pub fn close_zone_period(cfg: &CloseZoneConfig) -> Result<CloseZoneResult> {
    cfg.validate()?;
    let c = cfg.wave_speed;
    let (r1, v, t) = (cfg.r1, cfg.v, cfg.period);
    let cos = cfg.theta.cos();
    match cfg.mover {
        Mover::Observer => {
            let lam = c * t;
            let a0 = (c - v) * (c + v);
            let a1 = 2.0 * (c * (r1 - lam) - v * r1 * cos);
            let a2 = lam * (lam - 2.0 * r1);
            let disc = a1 * a1 - 4.0 * a0 * a2;
            if disc < 0.0 {
                return numeric("negative discriminant: unphysical close-zone configuration");
            }
            let sq = disc.sqrt();
            let tp = if a1 > 0.0 { 2.0 * a2 / (-a1 - sq) } else { (-a1 + sq) / (2.0 * a0) };
            if !(tp > 0.0) {
                return numeric("close-zone period root is not positive");
            }
            let approx_ratio = 1.0 - (v * v * tp + r1 * v * cos) / (c * (r1 + v * tp));
            Ok(CloseZoneResult {
                sample: DopplerSample::from_period_change(0.0, t, tp - t),
                approx_ratio,
                quadratic: Some((a0, a1, a2)),
            })
        }
        Mover::Source => {
            let s = v * t;
            let r2 = (r1 * r1 + s * s - 2.0 * r1 * s * cos).sqrt();
            let change = s * (s - 2.0 * r1 * cos) / (r2 + r1) / c;
            let fr = r1 / t;
            let approx_ratio = 1.0 / (1.0 + (v * v + fr * fr - 2.0 * v * fr * cos).sqrt() / c);
            Ok(CloseZoneResult { sample: DopplerSample::from_period_change(0.0, t, change), approx_ratio, quadratic: None })
        }
    }
}

/// Observed period of crests emitted at `t0` and `t0 + T` by solving the
/// two light-time problems self-consistently. `t` of the sample is `t0`.
pub fn two_event_period(src: &dyn Motion, obs: &dyn Motion, t0: f64, period: f64, wave_speed: f64) -> Result<DopplerSample> {
    let ci = crest_interval(src, obs, t0, period, wave_speed)?;
    Ok(DopplerSample::from_period_change(t0, period, ci.period_change))
}

/// A scalar distance history `r(t)`.
pub trait Range: Sync {
    fn range(&self, t: f64) -> f64;
    fn range_rate(&self, t: f64) -> f64;
    /// `r(t + dt) - r(t)`
    fn range_change(&self, t: f64, dt: f64) -> f64 {
        self.range(t + dt) - self.range(t)
    }
}

/// `r(t) = r0 + v0 t + a t^2 / 2` (increasing = receding).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcceleratedRange {
    pub r0: f64,
    pub v0: f64,
    pub a: f64,
}

impl Range for AcceleratedRange {
    fn range(&self, t: f64) -> f64 {
        self.r0 + t * (self.v0 + 0.5 * self.a * t)
    }
    fn range_rate(&self, t: f64) -> f64 {
        self.v0 + self.a * t
    }
    fn range_change(&self, t: f64, dt: f64) -> f64 {
        dt * (self.v0 + self.a * (t + 0.5 * dt))
    }
}

/// Distance from a fixed point to a moving node.
pub struct RangeFromPoint<'a> {
    pub motion: &'a dyn Motion,
    pub point: crate::core::Vec3,
}

impl Range for RangeFromPoint<'_> {
    fn range(&self, t: f64) -> f64 {
        (self.motion.position(t) - self.point).norm()
    }
    fn range_rate(&self, t: f64) -> f64 {
        let d = self.motion.position(t) - self.point;
        let n = d.norm();
        if n > 0.0 {
            d.dot(self.motion.velocity(t)) / n
        } else {
            0.0
        }
    }
    fn range_change(&self, t: f64, dt: f64) -> f64 {
        crate::core::distance_change(self.motion.position(t) - self.point, self.motion.displacement(t, dt))
    }
}

/// Which nodes move along the line in the general-motion formulas.
#[derive(Clone, Copy)]
pub enum GeneralMotion<'a> {
    /// `r(t)`: source distance from a static observer; `t` is the emission epoch.
    SourceMoving(&'a dyn Range),
    /// `r(t')`: observer distance from a static source; `t` is the reception epoch.
    ObserverMoving(&'a dyn Range),
    /// Source at `-r(t)` and observer at `+r'(t')` on one line, either side
    /// of a fixed origin; `t` is the emission epoch.
    Both { source: &'a dyn Range, observer: &'a dyn Range },
}

fn implicit_period<G: Fn(f64) -> (f64, f64)>(g: G, period: f64) -> Result<f64> {
    let (lo, hi) = widen_bracket(&|x| g(x).0, 0.5 * period, 2.0 * period, 60)?;
    newton_bisect(g, period, lo, hi, 1e-15 * period, 200)
}

/// Period from general one-dimensional motion.
pub fn general_motion_frequency(motion: GeneralMotion, t: f64, period: f64, wave_speed: f64) -> Result<DopplerSample> {
    ensure_positive("period", period)?;
    ensure_positive("wave speed", wave_speed)?;
    let c = wave_speed;
    match motion {
        GeneralMotion::SourceMoving(r) => {
            let change = r.range_change(t, period) / c;
            check_period(period + change)?;
            Ok(DopplerSample::from_period_change(t, period, change))
        }
        GeneralMotion::ObserverMoving(r) => {
            let tp = implicit_period(
                |tp| (tp - period - r.range_change(t, tp) / c, 1.0 - r.range_rate(t + tp) / c),
                period,
            )?;
            Ok(DopplerSample::from_period_change(t, period, tp - period))
        }
        GeneralMotion::Both { source, observer } => {
            // reception epoch of the first crest
            let rs = source.range(t);
            let mut tr = t + (rs + observer.range(t)) / c;
            let mut prev = f64::INFINITY;
            for i in 0.. {
                let step = (tr - t - (rs + observer.range(tr)) / c) / (1.0 - observer.range_rate(tr) / c);
                tr -= step;
                if step_settled(step, &mut prev, tr.abs().max(period), 4.0 * f64::EPSILON) {
                    break;
                }
                if i > 100 {
                    return numeric("reception epoch iteration did not converge");
                }
            }
            let ds = source.range_change(t, period);
            let tp = implicit_period(
                |tp| (tp - period - (ds + observer.range_change(tr, tp)) / c, 1.0 - observer.range_rate(tr + tp) / c),
                period,
            )?;
            Ok(DopplerSample::from_period_change(t, period, tp - period))
        }
    }
}

fn check_period(p: f64) -> Result<()> {
    if p > 0.0 {
        Ok(())
    } else {
        domain("observed period is not positive; source outruns its own waves")
    }
}

/// Branch of the linear-acceleration formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AccelBranch {
    Approach,
    Recede,
    PassThrough,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearAccelResult {
    pub sample: DopplerSample,
    pub branch: AccelBranch,
    /// Small-speed shift `±f (v0 + a t + sqrt(a H / 2)) / c` (Hz); `None` on pass-through
    pub approx_shift: Option<f64>,
    /// Acceleration-only term `±f sqrt(a H / 2) / c` with `H = a T^2 / 2` (Hz)
    pub accel_term: Option<f64>,
    /// Set when `|v0 + a t + a T| >= 0.01 c`
    pub speed_warning: bool,
}

/// Source accelerating along a line through a static observer at the origin.
///
/// The source is at `x(t) = -r0 + v0 t + a t^2 / 2`; `t` is the emission epoch.
pub fn linear_accel_doppler(r0: f64, v0: f64, a: f64, t: f64, period: f64, f: f64, wave_speed: f64) -> Result<LinearAccelResult> {
    ensure_positive("period", period)?;
    ensure_positive("wave speed", wave_speed)?;
    let c = wave_speed;
    let x = |s: f64| -r0 + s * (v0 + 0.5 * a * s);
    let (x1, x2) = (x(t), x(t + period));
    let step = period * (v0 + a * (t + 0.5 * period));
    let (branch, dr) = if x1 <= 0.0 && x2 <= 0.0 {
        (AccelBranch::Approach, -step)
    } else if x1 >= 0.0 && x2 >= 0.0 {
        (AccelBranch::Recede, step)
    } else {
        (AccelBranch::PassThrough, x2.abs() - x1.abs())
    };
    let change = dr / c;
    check_period(period + change)?;
    let sample = DopplerSample::from_period_change(t, period, change);
    let freq = f;
    let h = 0.5 * a * period * period;
    let accel = (a * h / 2.0).abs().sqrt() * a.signum();
    let sign = match branch {
        AccelBranch::Approach => Some(1.0),
        AccelBranch::Recede => Some(-1.0),
        AccelBranch::PassThrough => None,
    };
    let approx_shift = sign.map(|s| s * freq * (v0 + a * t + accel) / c);
    let accel_term = sign.map(|s| s * freq * accel / c);
    let speed_warning = (v0 + a * t + a * period).abs() >= 0.01 * c;
    Ok(LinearAccelResult { sample, branch, approx_shift, accel_term, speed_warning })
}

/// Which node rides the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircularMode {
    SourceOnCircle,
    ObserverOnCircle,
}

/// Solver for the observer-on-circle case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObserverSolver {
    /// Light time and implicit period solved exactly
    #[default]
    Exact,
    /// Source-on-circle formula delayed by the light time
    LargeRadius,
    /// Light time neglected (`t' = t`), period still implicit
    SmallRadius,
}

/// Circle of radius `R` about the origin, other node static at `(-r0, 0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleGeometry {
    pub radius: f64,
    pub r0: f64,
    pub omega: f64,
}

impl CircleGeometry {
    pub fn range(&self, t: f64) -> f64 {
        let d = self.radius - self.r0;
        let h = (0.5 * self.omega * t).cos();
        (d * d + 4.0 * self.radius * self.r0 * h * h).sqrt()
    }

    pub fn range_rate(&self, t: f64) -> f64 {
        let r = self.range(t);
        if r > 0.0 {
            -self.radius * self.r0 * self.omega * (self.omega * t).sin() / r
        } else {
            0.0
        }
    }

    /// `r(t + dt) - r(t)` without cancellation.
    pub fn range_change(&self, t: f64, dt: f64) -> f64 {
        let den = self.range(t) + self.range(t + dt);
        if den == 0.0 {
            return 0.0;
        }
        let w = self.omega;
        -4.0 * self.radius * self.r0 * (0.5 * w * (2.0 * t + dt)).sin() * (0.5 * w * dt).sin() / den
    }
}

/// Circular motion Doppler. For `SourceOnCircle` the sample epoch is the
/// emission time; for `ObserverOnCircle` it is the reception time `t'`.
#[allow(clippy::too_many_arguments)]
pub fn circular_doppler(
    radius: f64,
    r0: f64,
    omega: f64,
    t: f64,
    period: f64,
    wave_speed: f64,
    mode: CircularMode,
    solver: ObserverSolver,
) -> Result<DopplerSample> {
    ensure_positive("radius", radius)?;
    ensure_positive("period", period)?;
    ensure_positive("wave speed", wave_speed)?;
    if !(r0 >= 0.0) {
        return domain("r0 must be non-negative");
    }
    let g = CircleGeometry { radius, r0, omega };
    let c = wave_speed;
    let implicit = |tr: f64| {
        implicit_period(|tp| (tp - period - g.range_change(tr, tp) / c, 1.0 - g.range_rate(tr + tp) / c), period)
            .map(|tp| DopplerSample::from_period_change(tr, period, tp - period))
    };
    match (mode, solver) {
        (CircularMode::SourceOnCircle, _) => {
            let change = g.range_change(t, period) / c;
            Ok(DopplerSample::from_period_change(t, period, change))
        }
        (CircularMode::ObserverOnCircle, ObserverSolver::Exact) => {
            let tr = circle_reception(&g, t, c)?;
            implicit(tr)
        }
        (CircularMode::ObserverOnCircle, ObserverSolver::LargeRadius) => {
            let tr = t + g.range(t) / c;
            let change = g.range_change(t, period) / c;
            Ok(DopplerSample::from_period_change(tr, period, change))
        }
        (CircularMode::ObserverOnCircle, ObserverSolver::SmallRadius) => implicit(t),
    }
}

/// Reception time `t'` with `t' = t + r(t') / c`.
fn circle_reception(g: &CircleGeometry, t: f64, c: f64) -> Result<f64> {
    let mut tr = t + g.range(t) / c;
    let mut prev = f64::INFINITY;
    for _ in 0..100 {
        let step = (tr - t - g.range(tr) / c) / (1.0 - g.range_rate(tr) / c);
        tr -= step;
        if step_settled(step, &mut prev, tr.abs().max(g.range(tr) / c), 4.0 * f64::EPSILON) {
            return Ok(tr);
        }
    }
    numeric("reception time iteration did not converge")
}

/// Instantaneous-rate approximation `r0 v sin(wt) / (lambda r(t))` (Hz).
pub fn circular_doppler_approx(radius: f64, r0: f64, omega: f64, t: f64, f: f64, wave_speed: f64) -> f64 {
    let g = CircleGeometry { radius, r0, omega };
    -f * g.range_rate(t) / wave_speed
}

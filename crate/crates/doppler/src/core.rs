//! Vectors, trajectories, Earth frames and light-time solving.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{domain, numeric, DopplerError, Result};
use crate::numeric::{step_settled, CubicSpline};

/// Speed of light in vacuum (m/s).
pub const C: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };
    pub const X: Vec3 = Vec3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Vec3 = Vec3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 1.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Unit vector; the zero vector is returned unchanged.
    pub fn unit(self) -> Vec3 {
        let n = self.norm();
        if n > 0.0 {
            self / n
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

/// `|a + delta| - |a|` without cancellation.
pub fn distance_change(a: Vec3, delta: Vec3) -> f64 {
    let b = a + delta;
    let den = a.norm() + b.norm();
    if den == 0.0 {
        return 0.0;
    }
    delta.dot(a + b) / den
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KinematicState {
    pub position: Vec3,
    pub velocity: Vec3,
}

/// Anything with a position and velocity as a function of time.
pub trait Motion: Sync {
    fn position(&self, t: f64) -> Vec3;
    fn velocity(&self, t: f64) -> Vec3;

    /// `position(t + dt) - position(t)`; implementors override this with
    /// forms that stay accurate when `dt` is tiny compared with `t`.
    fn displacement(&self, t: f64, dt: f64) -> Vec3 {
        self.position(t + dt) - self.position(t)
    }

    fn state(&self, t: f64) -> KinematicState {
        KinematicState { position: self.position(t), velocity: self.velocity(t) }
    }
}

/// Time-ordered position samples interpolated by natural cubic splines.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    samples: Vec<(f64, Vec3)>,
    sx: CubicSpline,
    sy: CubicSpline,
    sz: CubicSpline,
}

impl SampledPath {
    pub fn new(samples: Vec<(f64, Vec3)>) -> Result<Self> {
        let t: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let sx = CubicSpline::new(t.clone(), samples.iter().map(|s| s.1.x).collect())?;
        let sy = CubicSpline::new(t.clone(), samples.iter().map(|s| s.1.y).collect())?;
        let sz = CubicSpline::new(t, samples.iter().map(|s| s.1.z).collect())?;
        Ok(Self { samples, sx, sy, sz })
    }

    pub fn samples(&self) -> &[(f64, Vec3)] {
        &self.samples
    }

    fn eval(&self, t: f64) -> (Vec3, Vec3) {
        let (x, vx) = self.sx.eval(t);
        let (y, vy) = self.sy.eval(t);
        let (z, vz) = self.sz.eval(t);
        (Vec3::new(x, y, z), Vec3::new(vx, vy, vz))
    }
}

/// Trajectory kinds used throughout the crate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TrajectorySpec", into = "TrajectorySpec")]
pub enum Trajectory {
    Static { position: Vec3 },
    /// `position + velocity * t`
    Uniform { position: Vec3, velocity: Vec3 },
    /// Moves along `axis` with `x(t) = -r0 + v0 t + a t^2 / 2`; the observer
    /// of the linear-acceleration formulas sits at the origin.
    LinearAccel { r0: f64, v0: f64, a: f64, axis: Vec3 },
    /// `center + radius (cos(omega t + phase) u + sin(omega t + phase) v)`
    Circular { center: Vec3, radius: f64, omega: f64, phase: f64, axis_u: Vec3, axis_v: Vec3 },
    Sampled(SampledPath),
}

/// Serializable description of a [`Trajectory`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TrajectorySpec {
    Static {
        position: Vec3,
    },
    Uniform {
        position: Vec3,
        velocity: Vec3,
    },
    LinearAccel {
        r0: f64,
        v0: f64,
        a: f64,
        #[serde(default = "x_axis")]
        axis: Vec3,
    },
    Circular {
        #[serde(default)]
        center: Vec3,
        radius: f64,
        omega: f64,
        #[serde(default)]
        phase: f64,
        #[serde(default = "x_axis")]
        axis_u: Vec3,
        #[serde(default = "y_axis")]
        axis_v: Vec3,
    },
    Sampled {
        samples: Vec<(f64, Vec3)>,
    },
}

fn x_axis() -> Vec3 {
    Vec3::X
}

fn y_axis() -> Vec3 {
    Vec3::Y
}

impl TryFrom<TrajectorySpec> for Trajectory {
    type Error = DopplerError;

    fn try_from(s: TrajectorySpec) -> Result<Self> {
        let tr = match s {
            TrajectorySpec::Static { position } => Trajectory::Static { position },
            TrajectorySpec::Uniform { position, velocity } => Trajectory::Uniform { position, velocity },
            TrajectorySpec::LinearAccel { r0, v0, a, axis } => Trajectory::LinearAccel { r0, v0, a, axis },
            TrajectorySpec::Circular { center, radius, omega, phase, axis_u, axis_v } => {
                Trajectory::Circular { center, radius, omega, phase, axis_u, axis_v }
            }
            TrajectorySpec::Sampled { samples } => Trajectory::Sampled(SampledPath::new(samples)?),
        };
        tr.validate()?;
        Ok(tr)
    }
}

impl From<Trajectory> for TrajectorySpec {
    fn from(t: Trajectory) -> Self {
        match t {
            Trajectory::Static { position } => TrajectorySpec::Static { position },
            Trajectory::Uniform { position, velocity } => TrajectorySpec::Uniform { position, velocity },
            Trajectory::LinearAccel { r0, v0, a, axis } => TrajectorySpec::LinearAccel { r0, v0, a, axis },
            Trajectory::Circular { center, radius, omega, phase, axis_u, axis_v } => {
                TrajectorySpec::Circular { center, radius, omega, phase, axis_u, axis_v }
            }
            Trajectory::Sampled(p) => TrajectorySpec::Sampled { samples: p.samples },
        }
    }
}

impl Trajectory {
    /// Circular path in the x-y plane about `center`.
    pub fn circle(center: Vec3, radius: f64, omega: f64, phase: f64) -> Self {
        Trajectory::Circular { center, radius, omega, phase, axis_u: Vec3::X, axis_v: Vec3::Y }
    }

    pub fn sampled(samples: Vec<(f64, Vec3)>) -> Result<Self> {
        Ok(Trajectory::Sampled(SampledPath::new(samples)?))
    }

    pub fn validate(&self) -> Result<()> {
        let finite = match self {
            Trajectory::Static { position } => position.is_finite(),
            Trajectory::Uniform { position, velocity } => position.is_finite() && velocity.is_finite(),
            Trajectory::LinearAccel { r0, v0, a, axis } => {
                if (axis.norm() - 1.0).abs() > 1e-9 {
                    return domain("linear_accel axis must be a unit vector");
                }
                r0.is_finite() && v0.is_finite() && a.is_finite()
            }
            Trajectory::Circular { center, radius, omega, phase, axis_u, axis_v } => {
                if !(*radius > 0.0) {
                    return domain(format!("circular radius must be positive, got {radius}"));
                }
                if (axis_u.norm() - 1.0).abs() > 1e-9 || (axis_v.norm() - 1.0).abs() > 1e-9 || axis_u.dot(*axis_v).abs() > 1e-9 {
                    return domain("circular axes must be orthonormal");
                }
                center.is_finite() && omega.is_finite() && phase.is_finite()
            }
            Trajectory::Sampled(_) => true,
        };
        if finite {
            Ok(())
        } else {
            domain("trajectory parameters must be finite")
        }
    }
}

impl Motion for Trajectory {
    fn position(&self, t: f64) -> Vec3 {
        match self {
            Trajectory::Static { position } => *position,
            Trajectory::Uniform { position, velocity } => *position + *velocity * t,
            Trajectory::LinearAccel { r0, v0, a, axis } => *axis * (-r0 + v0 * t + 0.5 * a * t * t),
            Trajectory::Circular { center, radius, omega, phase, axis_u, axis_v } => {
                let th = omega * t + phase;
                *center + (*axis_u * th.cos() + *axis_v * th.sin()) * *radius
            }
            Trajectory::Sampled(p) => p.eval(t).0,
        }
    }

    fn velocity(&self, t: f64) -> Vec3 {
        match self {
            Trajectory::Static { .. } => Vec3::ZERO,
            Trajectory::Uniform { velocity, .. } => *velocity,
            Trajectory::LinearAccel { v0, a, axis, .. } => *axis * (v0 + a * t),
            Trajectory::Circular { radius, omega, phase, axis_u, axis_v, .. } => {
                let th = omega * t + phase;
                (*axis_v * th.cos() - *axis_u * th.sin()) * (radius * omega)
            }
            Trajectory::Sampled(p) => p.eval(t).1,
        }
    }

    fn displacement(&self, t: f64, dt: f64) -> Vec3 {
        match self {
            Trajectory::Static { .. } => Vec3::ZERO,
            Trajectory::Uniform { velocity, .. } => *velocity * dt,
            Trajectory::LinearAccel { v0, a, axis, .. } => *axis * (dt * (v0 + a * (t + 0.5 * dt))),
            Trajectory::Circular { radius, omega, phase, axis_u, axis_v, .. } => {
                let mid = omega * (t + 0.5 * dt) + phase;
                let s = 2.0 * (0.5 * omega * dt).sin() * radius;
                (*axis_v * mid.cos() - *axis_u * mid.sin()) * s
            }
            Trajectory::Sampled(p) => p.eval(t + dt).0 - p.eval(t).0,
        }
    }
}

/// Earth constants used by the frame and satellite operations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EarthModel {
    /// Geoid radius (m)
    pub radius: f64,
    /// Rotation rate (rad/s)
    pub omega_e: f64,
    /// Gravitational parameter (m^3/s^2)
    pub gm: f64,
    /// Quadrupole coefficient
    pub j2: f64,
    /// Equatorial radius used with J2 (m)
    pub a1: f64,
}

impl Default for EarthModel {
    fn default() -> Self {
        Self { radius: 6_378_137.0, omega_e: 7.292_115_9e-5, gm: 3.986_004_418e14, j2: 1.082_63e-3, a1: 6.378_137_0e6 }
    }
}

impl EarthModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.gm > 0.0 && self.a1 > 0.0 && self.omega_e >= 0.0) {
            return domain("earth model constants must be positive");
        }
        if !(0.0..=0.01).contains(&self.j2) {
            return domain(format!("J2 must lie in [0, 0.01], got {}", self.j2));
        }
        Ok(())
    }
}

/// A 3x3 rotation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameRotation {
    pub m: [[f64; 3]; 3],
}

impl FrameRotation {
    pub const IDENTITY: FrameRotation = FrameRotation { m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] };

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn transpose(&self) -> FrameRotation {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[j][i];
            }
        }
        FrameRotation { m }
    }

    pub fn compose(&self, o: &FrameRotation) -> FrameRotation {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).map(|k| self.m[i][k] * o.m[k][j]).sum();
            }
        }
        FrameRotation { m }
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// ECI to ECEF rotation at time `t`; `t = 0` when the x axes coincide.
pub fn rotation_eci_to_ecef(t: f64, earth: &EarthModel) -> FrameRotation {
    let (s, c) = (earth.omega_e * t).sin_cos();
    FrameRotation { m: [[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]] }
}

pub fn rotation_ecef_to_eci(t: f64, earth: &EarthModel) -> FrameRotation {
    rotation_eci_to_ecef(t, earth).transpose()
}

/// Velocity of an Earth-fixed frame point in ECI coordinates.
///
/// With `relativistic` set the transport and rotation speeds are combined
/// with the `1 / (1 + b1 b2)` factor.
pub fn station_velocity_eci(
    v_ecef: Vec3,
    r_ecef: Vec3,
    t: f64,
    earth: &EarthModel,
    relativistic: bool,
    c: f64,
) -> Result<Vec3> {
    if v_ecef.norm() >= c {
        return domain("station speed must be below the wave speed");
    }
    let rce = rotation_ecef_to_eci(t, earth);
    let transport = rce.apply(v_ecef);
    let spin = Vec3::new(0.0, 0.0, earth.omega_e).cross(rce.apply(r_ecef));
    let v = transport + spin;
    if relativistic {
        let b1 = transport.norm() / c;
        let b2 = spin.norm() / c;
        Ok(v / (1.0 + b1 * b2))
    } else {
        Ok(v)
    }
}

/// Inverse of the non-relativistic [`station_velocity_eci`].
pub fn station_velocity_ecef(v_eci: Vec3, r_ecef: Vec3, t: f64, earth: &EarthModel) -> Vec3 {
    let rce = rotation_ecef_to_eci(t, earth);
    let spin = Vec3::new(0.0, 0.0, earth.omega_e).cross(rce.apply(r_ecef));
    rce.transpose().apply(v_eci - spin)
}

/// Result of a light-time solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightTime {
    pub t_arrive: f64,
    /// `t_arrive - t_emit`
    pub delay: f64,
    pub path_length: f64,
}

const LIGHT_TIME_MAX_ITER: usize = 100;

/// Finds the reception time of a wavefront emitted by `src` at `t_emit`.
///
/// Solves `c (t_a - t_e) = |obs(t_a) - src(t_e)|` with Newton-accelerated
/// fixed-point steps; converges to machine precision.
pub fn solve_light_time(src: &dyn Motion, obs: &dyn Motion, t_emit: f64, wave_speed: f64) -> Result<LightTime> {
    if !(wave_speed > 0.0) {
        return domain("wave speed must be positive");
    }
    let p_src = src.position(t_emit);
    let d0 = obs.position(t_emit) - p_src;
    let mut tau = d0.norm() / wave_speed;
    let mut prev = f64::INFINITY;
    for _ in 0..LIGHT_TIME_MAX_ITER {
        let d = d0 + obs.displacement(t_emit, tau);
        let dist = d.norm();
        let vo = obs.velocity(t_emit + tau);
        let recession = if dist > 0.0 { d.dot(vo) / dist } else { vo.norm() };
        if recession >= wave_speed {
            return domain("observer recedes at or above the wave speed");
        }
        let g = wave_speed * tau - dist;
        let step = g / (wave_speed - recession);
        tau -= step;
        if step_settled(step, &mut prev, tau.abs(), 4.0 * f64::EPSILON) || (tau == 0.0 && dist == 0.0) {
            let d = d0 + obs.displacement(t_emit, tau);
            return Ok(LightTime { t_arrive: t_emit + tau, delay: tau, path_length: d.norm() });
        }
    }
    numeric("light-time iteration did not converge in 100 iterations")
}

/// Reception interval of two crests emitted `period` apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrestInterval {
    pub first: LightTime,
    /// Observed interval `T'`
    pub period_obs: f64,
    /// `T' - T`, computed without cancellation
    pub period_change: f64,
    /// Path length change between the two crests
    pub path_change: f64,
}

/// Solves `T' = T + (d2 - d1) / c` for crests emitted at `t0` and `t0 + T`.
pub fn crest_interval(src: &dyn Motion, obs: &dyn Motion, t0: f64, period: f64, wave_speed: f64) -> Result<CrestInterval> {
    if !(period > 0.0) {
        return domain("period must be positive");
    }
    let first = solve_light_time(src, obs, t0, wave_speed)?;
    let t1 = first.t_arrive;
    let d1 = obs.position(t1) - src.position(t0);
    let src_step = src.displacement(t0, period);
    let mut delta = 0.0;
    let mut prev = f64::INFINITY;
    for _ in 0..LIGHT_TIME_MAX_ITER {
        let tp = period + delta;
        let step_vec = obs.displacement(t1, tp) - src_step;
        let dd = distance_change(d1, step_vec);
        let d2 = d1 + step_vec;
        let n2 = d2.norm();
        let vo = obs.velocity(t1 + tp);
        let recession = if n2 > 0.0 { d2.dot(vo) / n2 } else { 0.0 };
        if recession >= wave_speed {
            return domain("observer recedes at or above the wave speed");
        }
        let h = delta - dd / wave_speed;
        let step = h / (1.0 - recession / wave_speed);
        delta -= step;
        if step_settled(step, &mut prev, period, 1e-16) {
            let tp = period + delta;
            let step_vec = obs.displacement(t1, tp) - src_step;
            let path_change = distance_change(d1, step_vec);
            if !(tp > 0.0) {
                return numeric("observed period is not positive");
            }
            return Ok(CrestInterval { first, period_obs: tp, period_change: delta, path_change });
        }
    }
    numeric("crest interval iteration did not converge")
}

/// Relativistic composition of collinear velocities.
pub fn relativistic_velocity_add(v: f64, v2: f64, c: f64) -> Result<f64> {
    if !(v.abs() < c && v2.abs() < c) {
        return domain("velocities must lie strictly inside (-c, c)");
    }
    let u = (v + v2) / (1.0 + v * v2 / (c * c));
    // rounding can land exactly on c for inputs within an ulp of it
    Ok(u.clamp(-c * (1.0 - f64::EPSILON), c * (1.0 - f64::EPSILON)))
}

/// Elevation of a satellite on a circular orbit passing over the station at `t = 0`.
pub fn elevation_angle(t: f64, earth: &EarthModel, rs: f64, h_t: f64, omega: f64) -> Result<f64> {
    if !(rs > earth.radius + h_t) {
        return domain("orbit radius must exceed the station radius");
    }
    let (s, c) = (omega * t).sin_cos();
    Ok((rs * c - (earth.radius + h_t)).atan2(rs * s.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_quarter_turn() {
        let e = EarthModel::default();
        let t = std::f64::consts::FRAC_PI_2 / e.omega_e;
        let v = rotation_eci_to_ecef(t, &e).apply(Vec3::X);
        assert!(v.x.abs() < 1e-15 && (v.y + 1.0).abs() < 1e-15);
        assert_eq!(rotation_eci_to_ecef(0.0, &e), FrameRotation::IDENTITY);
    }

    #[test]
    fn equatorial_station_speed() {
        let e = EarthModel::default();
        let v = station_velocity_eci(Vec3::ZERO, Vec3::new(e.a1, 0.0, 0.0), 0.0, &e, false, C).unwrap();
        assert!((v.y - 465.10).abs() < 0.01 && v.x.abs() < 1e-12);
        let back = station_velocity_ecef(v, Vec3::new(e.a1, 0.0, 0.0), 0.0, &e);
        assert!(back.norm() < 1e-12);
    }

    #[test]
    fn light_time_example_ball() {
        let src = Trajectory::Static { position: Vec3::ZERO };
        let obs = Trajectory::Uniform { position: Vec3::new(30.0, 0.0, 0.0), velocity: Vec3::new(5.0, 0.0, 0.0) };
        let lt = solve_light_time(&src, &obs, 0.0, 10.0).unwrap();
        assert_eq!(lt.t_arrive, 6.0);
    }

    #[test]
    fn light_time_rejects_fast_observer() {
        let src = Trajectory::Static { position: Vec3::ZERO };
        let obs = Trajectory::Uniform { position: Vec3::new(30.0, 0.0, 0.0), velocity: Vec3::new(11.0, 0.0, 0.0) };
        assert!(matches!(solve_light_time(&src, &obs, 0.0, 10.0), Err(DopplerError::Domain(_))));
    }

    #[test]
    fn velocity_addition_half_c() {
        assert!((relativistic_velocity_add(0.5 * C, 0.5 * C, C).unwrap() - 0.8 * C).abs() < 1e-6);
        assert_eq!(relativistic_velocity_add(123.0, 0.0, C).unwrap(), 123.0);
        assert!(relativistic_velocity_add(C, 0.0, C).is_err());
    }

    #[test]
    fn circular_displacement_matches_positions() {
        let tr = Trajectory::circle(Vec3::new(1.0, 2.0, 0.0), 5.0, 0.3, 0.1);
        let d = tr.displacement(2.0, 0.7);
        let e = tr.position(2.7) - tr.position(2.0);
        assert!((d - e).norm() < 1e-13);
    }

    #[test]
    fn distance_change_is_exact_for_collinear() {
        let a = Vec3::new(1e7, 0.0, 0.0);
        assert_eq!(distance_change(a, Vec3::new(1e-6, 0.0, 0.0)), 1e-6);
    }

    #[test]
    fn sampled_trajectory_interpolates_uniform_motion() {
        let samples = (0..10).map(|i| (i as f64, Vec3::new(2.0 * i as f64, 1.0, 0.0))).collect();
        let tr = Trajectory::sampled(samples).unwrap();
        assert!((tr.position(3.5).x - 7.0).abs() < 1e-12);
        assert!((tr.velocity(3.5).x - 2.0).abs() < 1e-12);
    }
}

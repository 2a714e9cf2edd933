//! Accelerated frames, gravitational red/blue shift, Schwarzschild clock
//! rates and acceleration-dilation variants.

use serde::{Deserialize, Serialize};

use crate::classical::DopplerSample;
use crate::error::{domain, ensure_finite, ensure_positive, numeric, Result};

/// Newtonian gravitational constant (m^3 kg^-1 s^-2).
pub const G: f64 = 6.674e-11;
/// Maximal acceleration fitted to the rotor data (m/s^2).
pub const A_MAX_FRIEDMAN: f64 = 1.006e19;
/// Clock-postulate rotor coefficient.
pub const K_CLOCK_POSTULATE: f64 = 0.5;
/// Re-analysed rotor coefficient.
pub const K_REANALYSIS: f64 = 1.192 / 2.0;
/// Coefficient found by later rotor experiments.
pub const K_ROTOR_EXPERIMENTS: f64 = 2.0 / 3.0;

/// Source and observer at rest in a uniformly accelerated frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AccelFrameConfig {
    /// Proper acceleration (m/s^2); positive when the wave travels against it
    pub a: f64,
    /// Source-observer separation (m)
    pub x: f64,
    pub f: f64,
    /// Source period for the exact form (s); defaults to `1 / f`
    #[serde(default)]
    pub period: Option<f64>,
}

impl AccelFrameConfig {
    fn epsilon(&self, c: f64) -> Result<f64> {
        ensure_finite("a", self.a)?;
        ensure_positive("X", self.x)?;
        ensure_positive("f", self.f)?;
        let eps = self.a * self.x / (c * c);
        if eps >= 1.0 {
            return domain("a X must stay below c^2");
        }
        if eps <= -1.0 {
            return domain("a X must stay above -c^2");
        }
        Ok(eps)
    }
}

/// `f' = f (1 + a X / c^2)`.
pub fn accel_frame_shift_first_order(cfg: &AccelFrameConfig, c: f64) -> Result<DopplerSample> {
    let eps = cfg.epsilon(c)?;
    Ok(DopplerSample::from_shift(0.0, cfg.f, cfg.f * eps))
}

/// Crest-geometry result for the accelerated frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccelFrameExact {
    /// Received frequency in observer proper time (Hz)
    pub frequency_hz: f64,
    /// `frequency_hz - f (1 + aX/c^2)` evaluated without cancellation (Hz)
    pub minus_first_order_hz: f64,
    /// Reciprocal of the coordinate-time reception interval (Hz)
    pub coordinate_frequency_hz: f64,
}

fn gsq(z: f64) -> f64 {
    // sqrt(1 + z^2) - 1
    z * z / ((1.0 + z * z).sqrt() + 1.0)
}

/// `sinh(x) - x`.
fn sinh_minus_x(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x * x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0))
    } else {
        x.sinh() - x
    }
}

/// `w / ln(1 + w) - 1 - w / 2`.
fn q_tail(w: f64) -> f64 {
    if w.abs() < 1e-2 {
        let c = [-1.0 / 12.0, 1.0 / 24.0, -19.0 / 720.0, 3.0 / 160.0, -863.0 / 60480.0];
        let mut s = 0.0;
        for (i, ci) in c.iter().enumerate() {
            s += ci * w.powi(i as i32 + 2);
        }
        s
    } else {
        w / w.ln_1p() - 1.0 - 0.5 * w
    }
}

/// Exact crest-geometry frequency in an accelerated frame.
///
/// Both crests are traced along null lines of the Rindler frame. The source
/// period is a proper-time interval starting from rest, and the reception
/// interval is converted to the observer's proper time.
pub fn accel_frame_shift_exact(cfg: &AccelFrameConfig, c: f64) -> Result<AccelFrameExact> {
    let eps = cfg.epsilon(c)?;
    let period = cfg.period.unwrap_or(1.0 / cfg.f);
    ensure_positive("period", period)?;
    let f = cfg.f;
    if cfg.a == 0.0 {
        return Ok(AccelFrameExact { frequency_hz: f, minus_first_order_hz: 0.0, coordinate_frequency_hz: f });
    }
    let k = cfg.a / c;
    // proper-to-coordinate emission interval: r = u / sinh(u)
    let up = k * period;
    let r_m1 = -sinh_minus_x(up) / up.sinh();
    let u = up.sinh();
    let s = (1.0 + u * u).sqrt();
    let h = u / (s + 1.0);
    let w = u * (1.0 + h) / (1.0 + eps);
    if !(w > -1.0) {
        return numeric("second crest never reaches the observer");
    }
    let core = u * u * u / ((s + 1.0) * (s + 1.0)) + u * h - 2.0 * h * eps;
    let d = (1.0 + eps) / (1.0 + h) * (q_tail(w) + core / (2.0 * (1.0 + eps)));
    let minus_first_order_hz = f * (d * (1.0 + r_m1) + (1.0 + eps) * r_m1);

    // coordinate-time interval: f' T = 1 + rho
    let t1 = cfg.x / c * (1.0 + 0.5 * eps) / (1.0 + eps);
    let x = k * t1;
    let den = (u + gsq(u)) * (2.0 + u + gsq(u) + 2.0 * gsq(x));
    if !(den != 0.0) {
        return numeric("degenerate coordinate-time denominator");
    }
    let rho = 2.0 * (u * x - gsq(u) * gsq(x)) / den;
    if !(1.0 + rho > 0.0) {
        return numeric("coordinate-time denominator is not positive");
    }
    Ok(AccelFrameExact {
        frequency_hz: f + f * eps + minus_first_order_hz,
        minus_first_order_hz,
        coordinate_frequency_hz: f * (1.0 + rho) * (1.0 + r_m1),
    })
}

/// Quadrupole correction of a point-mass potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Oblateness {
    pub j2: f64,
    /// Equatorial radius (m)
    pub a1: f64,
    /// Polar angle from the symmetry axis (rad)
    pub polar_angle: f64,
}

/// Gravitational potential at one location.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    /// Potential given directly (J/kg)
    Direct { potential: f64 },
    /// `-GM/r`, optionally with the J2 term
    PointMass {
        gm: f64,
        r: f64,
        #[serde(default)]
        oblate: Option<Oblateness>,
    },
}

impl PotentialSpec {
    pub fn point_mass(gm: f64, r: f64) -> Self {
        PotentialSpec::PointMass { gm, r, oblate: None }
    }

    /// Potential (J/kg).
    pub fn potential(&self) -> Result<f64> {
        match *self {
            PotentialSpec::Direct { potential } => {
                ensure_finite("potential", potential)?;
                Ok(potential)
            }
            PotentialSpec::PointMass { gm, r, oblate } => {
                ensure_positive("r", r)?;
                ensure_positive("GM", gm)?;
                let base = -gm / r;
                Ok(match oblate {
                    None => base,
                    Some(o) => {
                        let ct = o.polar_angle.cos();
                        let p2 = 0.5 * (3.0 * ct * ct - 1.0);
                        base * (1.0 - o.j2 * (o.a1 / r).powi(2) * p2)
                    }
                })
            }
        }
    }

    /// Same body evaluated at another radius.
    pub fn at_radius(&self, r: f64) -> Result<Self> {
        match *self {
            PotentialSpec::PointMass { gm, oblate, .. } => Ok(PotentialSpec::PointMass { gm, r, oblate }),
            PotentialSpec::Direct { .. } => domain("a mass model is needed to move the evaluation radius"),
        }
    }
}

/// `f' = f (1 + (Phi_s - Phi_o) / c^2)`; a source higher in the well gives blueshift.
pub fn gravitational_shift(src: &PotentialSpec, obs: &PotentialSpec, f: f64, c: f64) -> Result<DopplerSample> {
    ensure_positive("f", f)?;
    let dphi = src.potential()? - obs.potential()?;
    Ok(DopplerSample::from_shift(0.0, f, f * dphi / (c * c)))
}

/// Clock offset accumulated over `duration` for a fractional rate `shift / f` (s).
pub fn accumulated_offset(shift: f64, f: f64, duration: f64) -> f64 {
    duration * shift / f
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzschildRatio {
    /// `f_r1 / f_r2`
    pub ratio: f64,
    /// `ratio - 1` without cancellation
    pub deviation: f64,
    /// Weak-field value of `ratio - 1`, `(Phi(r2) - Phi(r1)) / c^2`
    pub first_order: f64,
}

/// Frequency ratio of static clocks at radii `r1` and `r2` in the
/// Schwarzschild field of `body`, with potentials referenced to `phi0`.
pub fn schwarzschild_ratio(r1: f64, r2: f64, phi0: f64, body: &PotentialSpec, c: f64) -> Result<SchwarzschildRatio> {
    let gm = match *body {
        PotentialSpec::PointMass { gm, .. } => gm,
        PotentialSpec::Direct { .. } => return domain("a mass model is needed for the metric"),
    };
    let rs = 2.0 * gm / (c * c);
    for r in [r1, r2] {
        if !(r > rs) {
            return domain(format!("radius {r} m is inside the event horizon {rs} m"));
        }
    }
    let c2 = c * c;
    let p1 = (body.at_radius(r1)?.potential()? - phi0) / c2;
    let p2 = (body.at_radius(r2)?.potential()? - phi0) / c2;
    if !(1.0 + 2.0 * p1 > 0.0 && 1.0 + 2.0 * p2 > 0.0) {
        return domain("reference potential puts a clock beyond the horizon");
    }
    let q = 2.0 * (p2 - p1) / (1.0 + 2.0 * p1);
    let deviation = q / ((1.0 + q).sqrt() + 1.0);
    Ok(SchwarzschildRatio { ratio: 1.0 + deviation, deviation, first_order: p2 - p1 })
}

/// Fractional energy shift `-k v^2 / c^2` of a rotor absorber.
pub fn rotor_energy_shift(v: f64, k: f64, c: f64) -> Result<f64> {
    if !(v.abs() < c) {
        return domain("rim speed must be below c");
    }
    if !(k > 0.0) {
        return domain("k must be positive");
    }
    Ok(-k * (v / c).powi(2))
}

/// Exact time-dilation shift `sqrt(1 - v^2/c^2) - 1`.
pub fn rotor_dilation_exact(v: f64, c: f64) -> Result<f64> {
    if !(v.abs() < c) {
        return domain("rim speed must be below c");
    }
    let b2 = (v / c).powi(2);
    Ok(-b2 / ((1.0 - b2).sqrt() + 1.0))
}

/// `f'/f` with both velocity and acceleration dilation.
pub fn friedman_shift(v: f64, a: f64, a_max: f64, classic_ratio: f64, c: f64) -> Result<f64> {
    ensure_positive("a_max", a_max)?;
    if !(a.abs() < a_max) {
        return domain("acceleration must be below a_max");
    }
    if !(v.abs() < c) {
        return domain("speed must be below c");
    }
    let bv = v / c;
    let ba = a / a_max;
    Ok(classic_ratio / (((1.0 - bv) * (1.0 + bv)).sqrt() * ((1.0 - ba) * (1.0 + ba)).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::C;

    #[test]
    fn first_order_example() {
        let cfg = AccelFrameConfig { a: 1000.0, x: 1000.0, f: 1e9, period: None };
        let s = accel_frame_shift_first_order(&cfg, C).unwrap();
        assert!((s.freq_obs - 1_000_000_000.011).abs() < 1e-3);
        let e = accel_frame_shift_exact(&cfg, C).unwrap();
        assert!(e.minus_first_order_hz.abs() < 1e-8);
    }

    #[test]
    fn exact_matches_high_precision_reference() {
        // reference values from 50-digit evaluation of the crest geometry
        let cfg = AccelFrameConfig { a: 9.18e9, x: 1e6, f: 1e9, period: None };
        let e = accel_frame_shift_exact(&cfg, C).unwrap();
        assert!((e.minus_first_order_hz + 1.5638).abs() < 1e-4, "{}", e.minus_first_order_hz);
        assert!((e.coordinate_frequency_hz - 1_096_949_425.011_187).abs() < 1e-5);
        let cfg = AccelFrameConfig { a: 1000.0, x: 1000.0, f: 1e9, period: None };
        let e = accel_frame_shift_exact(&cfg, C).unwrap();
        assert!((e.minus_first_order_hz + 1.8555e-17).abs() < 1e-20);
    }

    #[test]
    fn redshift_along_acceleration() {
        let cfg = AccelFrameConfig { a: -9.8, x: 100.0, f: 1e9, period: None };
        assert!(accel_frame_shift_first_order(&cfg, C).unwrap().shift < 0.0);
    }

    #[test]
    fn coincident_clocks_agree() {
        // a T / c = 3.3e-3 with a vanishing separation: only the -u eps f / 2 term is left
        let cfg = AccelFrameConfig { a: 1e15, x: 1e-9, f: 1e9, period: None };
        let r = accel_frame_shift_exact(&cfg, C).unwrap();
        let (u, eps) = (1e15 * 1e-9 / C, 1e15 * 1e-9 / (C * C));
        assert!((r.minus_first_order_hz / (-0.5 * u * eps * 1e9) - 1.0).abs() < 1e-2);
    }

    #[test]
    fn gps_gravity_example() {
        let gm = G * 5.972e24;
        let s = gravitational_shift(&PotentialSpec::point_mass(gm, 2.66e7), &PotentialSpec::point_mass(gm, 6.37e6), 1.5e9, 3e8).unwrap();
        assert!((s.shift - 0.7931).abs() < 5e-4);
        let dt = accumulated_offset(s.shift, 1.5e9, 86_400.0);
        assert!((dt - 45.68e-6).abs() < 0.05e-6);
    }

    #[test]
    fn schwarzschild_reciprocity_and_horizon() {
        let body = PotentialSpec::point_mass(3.986e14, 1.0);
        let a = schwarzschild_ratio(6.37e6, 2.66e7, 0.0, &body, C).unwrap();
        let b = schwarzschild_ratio(2.66e7, 6.37e6, 0.0, &body, C).unwrap();
        assert!((a.ratio * b.ratio - 1.0).abs() < 1e-15);
        assert!((a.deviation - a.first_order).abs() < 1e-18);
        assert!(schwarzschild_ratio(1e-3, 1.0, 0.0, &body, C).is_err());
    }

    #[test]
    fn rotor_and_friedman() {
        assert!((rotor_energy_shift(0.001 * C, 0.5, C).unwrap() + 5e-7).abs() < 1e-20);
        let r = friedman_shift(0.0, A_MAX_FRIEDMAN / 2f64.sqrt(), A_MAX_FRIEDMAN, 1.0, C).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }
}

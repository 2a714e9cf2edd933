//! Ionospheric and tropospheric refractive-index models and the Doppler
//! shift produced by a time-varying propagation medium.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::core::{EarthModel, Vec3};
use crate::error::{domain, ensure_finite, ensure_positive, numeric, DopplerError, Result};
use crate::numeric::{adaptive_simpson, CubicSpline};

/// `q^2 / (4 pi^2 eps0 m_e)` in m^3/s^2.
pub const KAPPA: f64 = 80.61;
/// Electrons per m^2 in one TEC unit.
pub const TECU: f64 = 1e16;
/// Default thin-shell height for the VTEC to STEC mapping (m).
pub const SHELL_HEIGHT: f64 = 350e3;
/// Elevation below which the straight-path tropospheric model degrades.
pub const MIN_TROPO_ELEVATION: f64 = 3.0 * std::f64::consts::PI / 180.0;

/// Magneto-ionic polarisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IonoMode {
    Ordinary,
    Extraordinary,
}

/// Squared complex refractive index from the Appleton-Hartree equation.
///
/// `x = f_p^2 / f^2`, `y = f_H / f`, `z = nu / (2 pi f)`, `theta` is the angle
/// between the wave vector and the geomagnetic field.
pub fn appleton_hartree_n2(x: f64, y: f64, z: f64, theta: f64, mode: IonoMode) -> Result<Complex64> {
    for (name, v) in [("X", x), ("Y", y), ("Z", z), ("theta", theta)] {
        ensure_finite(name, v)?;
    }
    let (s, c) = theta.sin_cos();
    let one = Complex64::new(1.0, 0.0);
    let jz = Complex64::new(0.0, z);
    let a = one - x - jz;
    if a.norm() == 0.0 {
        return numeric("1 - X - jZ vanishes");
    }
    let yt2 = y * y * s * s;
    let root = (yt2 * yt2 / (4.0 * a * a) + y * y * c * c).sqrt();
    let sign = match mode {
        IonoMode::Ordinary => 1.0,
        IonoMode::Extraordinary => -1.0,
    };
    let den = one - jz - yt2 / (2.0 * a) + sign * root;
    if den.norm() == 0.0 {
        return numeric("Appleton-Hartree denominator vanishes");
    }
    Ok(one - x / den)
}

/// Expansion order for the collisionless, field-free index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IonoOrder {
    Sqrt,
    Linear,
}

/// Ionospheric refractive index from electron density `ne` (el/m^3).
pub fn simplified_iono_n(ne: f64, f: f64, order: IonoOrder) -> Result<f64> {
    ensure_positive("f", f)?;
    if !(ne.is_finite() && ne >= 0.0) {
        return domain("electron density must be non-negative");
    }
    let x = KAPPA * ne / (f * f);
    match order {
        IonoOrder::Linear => Ok(1.0 - 0.5 * x),
        IonoOrder::Sqrt => {
            if x >= 1.0 {
                return domain("plasma frequency at or above the carrier; wave is cut off");
            }
            Ok((1.0 - x).sqrt())
        }
    }
}

/// Refractive index sampled along a propagation path at one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhasePath {
    pub samples: Vec<(Vec3, f64)>,
    pub timestamp: f64,
}

impl PhasePath {
    pub fn new(samples: Vec<(Vec3, f64)>, timestamp: f64) -> Result<Self> {
        let p = PhasePath { samples, timestamp };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples.len() < 2 {
            return Err(DopplerError::Input("a phase path needs at least two samples".into()));
        }
        ensure_finite("timestamp", self.timestamp)?;
        for (p, n) in &self.samples {
            if !p.is_finite() || !(n.is_finite() && *n >= 0.0) {
                return Err(DopplerError::Input("phase path samples must be finite with n >= 0".into()));
            }
        }
        Ok(())
    }

    /// Trapezoidal `integral n dp`.
    pub fn length(&self) -> f64 {
        self.integrate(|n| n)
    }

    /// Trapezoidal `integral (n - 1) dp`; free of the geometric-length cancellation.
    pub fn excess(&self) -> f64 {
        self.integrate(|n| n - 1.0)
    }

    fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.samples
            .windows(2)
            .map(|w| (w[1].0 - w[0].0).norm() * 0.5 * (g(w[0].1) + g(w[1].1)))
            .sum()
    }
}

/// Doppler shift from the change of the phase path between two epochs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePathShift {
    /// `-(f/c) dP/dt` (Hz)
    pub shift_hz: f64,
    /// Received frequency when crests leave `t2 - t1` apart and the path
    /// difference is added to the crest interval (Hz)
    pub freq_crest_hz: f64,
}

pub fn phase_path_doppler(p1: &PhasePath, p2: &PhasePath, f: f64, c: f64) -> Result<PhasePathShift> {
    p1.validate()?;
    p2.validate()?;
    ensure_positive("f", f)?;
    ensure_positive("c", c)?;
    let dt = p2.timestamp - p1.timestamp;
    if dt == 0.0 {
        return domain("phase paths must carry distinct timestamps");
    }
    let dp = p2.length() - p1.length();
    Ok(PhasePathShift { shift_hz: -f / c * dp / dt, freq_crest_hz: f / (1.0 + dp / (c * dt)) })
}

/// Which parameter of the linear layer drifts with time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FlatIonoVariant {
    /// Base height moves at `vz` (m/s) with constant gradient.
    H0Varying { vz: f64 },
    /// Gradient `alpha` (el/m^4) varies; base `h0` fixed; `dtheta_dt` is the launch-angle rate.
    AlphaVarying { alpha: f64, h0: f64, dtheta_dt: f64 },
}

/// Doppler shift for the linear flat layer `Ne = alpha (z - h0)`.
pub fn flat_iono_doppler(theta_e: f64, f: f64, variant: FlatIonoVariant, c: f64) -> Result<f64> {
    ensure_positive("f", f)?;
    ensure_positive("c", c)?;
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta_e) {
        return domain("elevation must lie in [0, pi/2]");
    }
    let (s, co) = theta_e.sin_cos();
    match variant {
        FlatIonoVariant::H0Varying { vz } => {
            ensure_finite("Vz", vz)?;
            // cos^2 * atanh(sin), rewritten so that it tends to 0 at zenith
            let tail = if co <= 0.0 { 0.0 } else { co * co * (s.ln_1p() - co.ln()) };
            Ok(-f * vz / c * (s + tail))
        }
        FlatIonoVariant::AlphaVarying { alpha, h0, dtheta_dt } => {
            ensure_positive("alpha", alpha)?;
            ensure_finite("h0", h0)?;
            ensure_finite("dtheta_dt", dtheta_dt)?;
            if co <= 1e-12 {
                return domain("the varying-gradient form diverges at zenith");
            }
            let b = 2.0 * f * f / (alpha * KAPPA);
            // sin * D / (3 cos^2), with sin * cot = cos kept exact at theta = 0
            let sd = 2.0 * (h0 * co + b * co * s * s);
            let term = sd / (3.0 * co * co) - 4.0 * b * s * s * co / 3.0;
            Ok(-f / c * term * dtheta_dt)
        }
    }
}

/// Vertical electron-density profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum IonoProfile {
    FlatLinear {
        alpha: f64,
        h0: f64,
        #[serde(default)]
        vz: Option<f64>,
    },
    Exponential {
        n0: f64,
        alpha: f64,
        h0: f64,
    },
    Chapman {
        nmax: f64,
        hmax: f64,
        scale_height: f64,
    },
}

impl IonoProfile {
    pub fn validate(&self) -> Result<()> {
        match *self {
            IonoProfile::FlatLinear { alpha, h0, vz } => {
                if !(alpha >= 0.0) {
                    return domain("density gradient must be non-negative");
                }
                ensure_finite("h0", h0)?;
                if let Some(v) = vz {
                    ensure_finite("Vz", v)?;
                }
            }
            IonoProfile::Exponential { n0, alpha, h0 } => {
                if !(n0 >= 0.0) || !n0.is_finite() {
                    return domain("N0 must be non-negative");
                }
                ensure_finite("alpha", alpha)?;
                ensure_finite("h0", h0)?;
            }
            IonoProfile::Chapman { nmax, hmax, scale_height } => {
                if !(nmax >= 0.0) || !nmax.is_finite() {
                    return domain("Nmax must be non-negative");
                }
                ensure_finite("hmax", hmax)?;
                ensure_positive("scale height", scale_height)?;
            }
        }
        Ok(())
    }
}

/// Electron density (el/m^3) at altitude `h`.
pub fn profile_ne(profile: &IonoProfile, h: f64) -> Result<f64> {
    profile.validate()?;
    if !(h >= 0.0) {
        return domain("altitude must be non-negative");
    }
    Ok(match *profile {
        IonoProfile::FlatLinear { alpha, h0, .. } => {
            if h < h0 {
                0.0
            } else {
                alpha * (h - h0)
            }
        }
        IonoProfile::Exponential { n0, alpha, h0 } => {
            if h < h0 {
                0.0
            } else {
                n0 * (-alpha * (h - h0)).exp()
            }
        }
        IonoProfile::Chapman { nmax, hmax, scale_height } => {
            let z = (h - hmax) / scale_height;
            nmax * (0.5 * (1.0 - z - (-z).exp())).exp()
        }
    })
}

/// `kappa / (2 f c) dTEC/dt` with TEC in el/m^2.
pub fn tec_doppler(dtec_dt: f64, f: f64, c: f64) -> Result<f64> {
    ensure_positive("f", f)?;
    ensure_finite("dTEC/dt", dtec_dt)?;
    Ok(KAPPA / (2.0 * f * c) * dtec_dt)
}

/// Thin-shell obliquity factor `1 / cos z'` for an elevation `el`.
pub fn slant_factor(el: f64, earth_radius: f64, shell_height: f64) -> f64 {
    let k = earth_radius / (earth_radius + shell_height);
    let kc = k * el.cos();
    1.0 / (1.0 - kc * kc).sqrt()
}

fn slant_factor_rate(el: f64, earth_radius: f64, shell_height: f64) -> f64 {
    let k = earth_radius / (earth_radius + shell_height);
    let (s, c) = el.sin_cos();
    let q = 1.0 - k * k * c * c;
    k * k * c * s / (q * q.sqrt())
}

/// Vertical TEC time series read from a `t_unix_s,vtec_tecu` CSV file.
#[derive(Debug, Clone)]
pub struct TecSeries {
    spline: CubicSpline,
    t_range: (f64, f64),
}

#[derive(Deserialize)]
struct TecRow {
    t_unix_s: f64,
    vtec_tecu: f64,
}

impl TecSeries {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(DopplerError::Input("TEC series needs at least two rows".into()));
        }
        if samples.iter().any(|(t, v)| !t.is_finite() || !v.is_finite() || *v < 0.0) {
            return Err(DopplerError::Input("TEC rows must be finite with VTEC >= 0".into()));
        }
        let (t, v): (Vec<f64>, Vec<f64>) = samples.into_iter().unzip();
        let t_range = (t[0], t[t.len() - 1]);
        let spline = CubicSpline::new(t, v).map_err(|e| DopplerError::Input(format!("TEC series: {e}")))?;
        Ok(TecSeries { spline, t_range })
    }

    pub fn from_reader<R: std::io::Read>(rdr: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(rdr);
        let mut rows = Vec::new();
        for rec in reader.deserialize::<TecRow>() {
            let r = rec.map_err(|e| DopplerError::Input(format!("TEC csv: {e}")))?;
            rows.push((r.t_unix_s, r.vtec_tecu));
        }
        Self::new(rows)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| DopplerError::Input(format!("cannot open {}: {e}", path.display())))?;
        Self::from_reader(file)
    }

    pub fn time_range(&self) -> (f64, f64) {
        self.t_range
    }

    /// VTEC (el/m^2) and its rate (el/m^2/s).
    pub fn vtec(&self, t: f64) -> Result<(f64, f64)> {
        if t < self.t_range.0 || t > self.t_range.1 {
            return domain(format!("t = {t} outside the TEC series span"));
        }
        let (v, dv) = self.spline.eval(t);
        Ok((v * TECU, dv * TECU))
    }

    /// Rate of slant TEC along a ray of elevation `el` changing at `el_rate`.
    pub fn slant_tec_rate(&self, t: f64, el: f64, el_rate: f64, earth_radius: f64, shell_height: f64) -> Result<f64> {
        let (v, dv) = self.vtec(t)?;
        let m = slant_factor(el, earth_radius, shell_height);
        Ok(m * dv + slant_factor_rate(el, earth_radius, shell_height) * el_rate * v)
    }
}

/// Radio refractivity (N-units) from pressure and vapour pressure in millibar.
pub fn tropo_refractivity(p: f64, e: f64, t_k: f64) -> Result<f64> {
    ensure_positive("T_K", t_k)?;
    ensure_finite("P", p)?;
    ensure_finite("e", e)?;
    Ok(77.6 / t_k * (p + 4810.0 * e / t_k))
}

/// Height-dependent refractivity model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum TropoModel {
    /// `N = N_T (r - r_0)^2 / (h0 - hT)^2`.
    Quadratic { n_t: f64, h0: f64 },
    /// Dry plus wet fourth-power profiles.
    Quartic { n_td: f64, h0d: f64, n_tw: f64, h0w: f64 },
    /// Surface meteorology; shaped like the quadratic model up to `h0`.
    Measured {
        p: f64,
        e: f64,
        t_k: f64,
        #[serde(default = "default_measured_h0")]
        h0: f64,
    },
}

fn default_measured_h0() -> f64 {
    43e3
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TropoProfile {
    pub model: TropoModel,
    /// Station height (m)
    #[serde(default)]
    pub h_t: f64,
}

/// Single power-law layer `N_T ((h0 - h) / (h0 - hT))^power`.
#[derive(Debug, Clone, Copy)]
struct Layer {
    n_t: f64,
    h0: f64,
    power: i32,
}

impl TropoProfile {
    pub fn validate(&self) -> Result<()> {
        ensure_finite("hT", self.h_t)?;
        let check = |n: f64, h0: f64| -> Result<()> {
            if !(n.is_finite() && n >= 0.0) {
                return domain("refractivity must be non-negative");
            }
            if !(h0 > self.h_t) {
                return domain("tropospheric top must lie above the station");
            }
            Ok(())
        };
        match self.model {
            TropoModel::Quadratic { n_t, h0 } => check(n_t, h0),
            TropoModel::Quartic { n_td, h0d, n_tw, h0w } => {
                check(n_td, h0d)?;
                check(n_tw, h0w)
            }
            TropoModel::Measured { p, e, t_k, h0 } => check(tropo_refractivity(p, e, t_k)?, h0),
        }
    }

    fn layers(&self) -> Result<Vec<Layer>> {
        self.validate()?;
        Ok(match self.model {
            TropoModel::Quadratic { n_t, h0 } => vec![Layer { n_t, h0, power: 2 }],
            TropoModel::Quartic { n_td, h0d, n_tw, h0w } => {
                vec![Layer { n_t: n_td, h0: h0d, power: 4 }, Layer { n_t: n_tw, h0: h0w, power: 4 }]
            }
            TropoModel::Measured { p, e, t_k, h0 } => {
                vec![Layer { n_t: tropo_refractivity(p, e, t_k)?, h0, power: 2 }]
            }
        })
    }

    /// Refractivity (N-units) at height `h` above the geoid.
    pub fn refractivity(&self, h: f64) -> Result<f64> {
        Ok(self
            .layers()?
            .iter()
            .filter(|l| h <= l.h0)
            .map(|l| l.n_t * ((l.h0 - h) / (l.h0 - self.h_t)).powi(l.power))
            .sum())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FthetaMethod {
    Quadrature,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ftheta {
    /// Elevation weighting function (m)
    pub value: f64,
    /// Set when the elevation is below the 3 degree validity floor
    pub low_elevation: bool,
}

/// The tropospheric elevation weighting `f(theta_E)` in metres.
pub fn tropo_ftheta(profile: &TropoProfile, theta_e: f64, earth: &EarthModel, method: FthetaMethod) -> Result<Ftheta> {
    earth.validate()?;
    if !(theta_e > 0.0 && theta_e <= std::f64::consts::FRAC_PI_2) {
        return domain("elevation must lie in (0, pi/2]");
    }
    let r_t = earth.radius + profile.h_t;
    let mut value = 0.0;
    for l in profile.layers()? {
        let h = l.h0 - profile.h_t;
        value += match (method, l.power) {
            (FthetaMethod::Quadrature, _) => ftheta_quadrature(l, r_t, h, theta_e)?,
            (FthetaMethod::ClosedForm, 2) => l.n_t * r_t * quadratic_f2(r_t, h, theta_e),
            (FthetaMethod::ClosedForm, _) => l.n_t * r_t * quartic_f4(r_t, h, theta_e),
        };
    }
    Ok(Ftheta { value, low_elevation: theta_e < MIN_TROPO_ELEVATION })
}

fn ftheta_quadrature(l: Layer, r_t: f64, h: f64, theta: f64) -> Result<f64> {
    let s = theta.sin();
    let l1sq = r_t * r_t * s * s;
    let k = r_t * r_t * (2.0 * theta).sin() / 2.0;
    // integrate over x = r - r_T
    let g = |x: f64| {
        let r = r_t + x;
        let d = x * (r + r_t) + l1sq;
        let n = l.n_t * ((h - x) / h).powi(l.power);
        n * r * k / (d * d.sqrt())
    };
    adaptive_simpson(g, 0.0, h, 1e-11)
}

/// `f / (N_T r_T)` for the quadratic profile.
fn quadratic_f2(r_t: f64, h: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let l1 = r_t * s;
    let r_tro = r_t + h;
    let q = (l1 * l1 + h * (2.0 * r_t + h)).sqrt();
    let q_minus_l1 = h * (2.0 * r_t + h) / (q + l1);
    // ln(r_T (1 + s) / (r_tro + q))
    let log = -((h + q_minus_l1) / (r_t + l1)).ln_1p();
    c + r_t * (2.0 * theta).sin() / (h * h) * (q_minus_l1 + r_tro * log)
}

/// `f / (N_T r_T)` for one quartic component, in double-double arithmetic:
/// the bracket cancels by up to fifteen digits at low tropospheric tops.
fn quartic_f4(r_t: f64, h: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let rt = TwoFloat::from(r_t);
    let hh = TwoFloat::from(h);
    let rtro = TwoFloat::new_add(r_t, h);
    let l1 = TwoFloat::new_mul(r_t, s);
    let cos2 = 1.0 - TwoFloat::new_mul(s, s);
    let l2sq = rt * rt * cos2;
    let span = hh * (2.0 * rt + hh);
    let l3 = (l1 * l1 + span).sqrt();
    let l3_minus_l1 = div_dd(span, l3 + l1);
    let log = -ln_1p_dd(div_dd(hh + l3_minus_l1, rt + l1));
    let bracket = div_dd(l3 * l3 * l3 - l1 * l1 * l1, TwoFloat::from(3.0)) + l3 * (l2sq + 1.5 * rtro * rtro)
        - l1 * (l2sq - 1.5 * rt * rtro + 3.0 * rtro * rtro)
        + (1.5 * rtro * l2sq + rtro * rtro * rtro) * log;
    let h4 = hh * hh * hh * hh;
    let inner = 1.0 + div_dd(4.0 * l1 * bracket, h4);
    c * inner.hi()
}

/// Quotient refined by one Newton step; the library quotient carries only
/// about 53 bits.
fn div_dd(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q = a / b;
    q + (a - q * b).hi() / b.hi()
}

/// `ln(1 + x)` for `x >= 0` to full double-double precision via
/// `2 atanh(x / (2 + x))`; the library routine stops near 1e-23.
fn ln_1p_dd(x: TwoFloat) -> TwoFloat {
    let u = div_dd(x, 2.0 + x);
    let u2 = u * u;
    let mut pow = u;
    let mut sum = u;
    for k in 1..400 {
        pow *= u2;
        let term = div_dd(pow, TwoFloat::from((2 * k + 1) as f64));
        sum += term;
        if term.hi().abs() < 1e-34 * sum.hi().abs() {
            break;
        }
    }
    2.0 * sum
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElevationRateBranch {
    /// Station radius replaced by the Earth radius.
    #[default]
    Approximate,
    Exact,
}

/// Elevation-angle rate of a circular-orbit satellite overhead at `t = 0`.
pub fn elevation_rate(
    t: f64,
    earth: &EarthModel,
    rs: f64,
    h_t: f64,
    omega: f64,
    branch: ElevationRateBranch,
) -> Result<f64> {
    let r = match branch {
        ElevationRateBranch::Approximate => earth.radius,
        ElevationRateBranch::Exact => earth.radius + h_t,
    };
    if !(rs > earth.radius + h_t) || !(rs > r) {
        return domain("orbit radius must exceed the station radius");
    }
    ensure_finite("omega", omega)?;
    let c = (omega * t).cos();
    // Rs^2 + r^2 - 2 Rs r cos, with 1 - cos kept accurate near overhead
    let half = (0.5 * omega * t).sin();
    let den = (rs - r) * (rs - r) + 4.0 * rs * r * half * half;
    Ok(omega * (rs * r * c - rs * rs) / den)
}

/// `(1e-6 f / c) f(theta_E) dtheta_E/dt`.
pub fn tropo_doppler(f: f64, ftheta: f64, dtheta_dt: f64, c: f64) -> Result<f64> {
    for (name, v) in [("f", f), ("f(theta)", ftheta), ("dtheta/dt", dtheta_dt)] {
        ensure_finite(name, v)?;
    }
    Ok(1e-6 * f / c * ftheta * dtheta_dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::C;

    fn deg(d: f64) -> f64 {
        d.to_radians()
    }

    #[test]
    fn appleton_hartree_limits() {
        let n2 = appleton_hartree_n2(0.3, 0.0, 0.0, 0.4, IonoMode::Ordinary).unwrap();
        assert!((n2.re - 0.7).abs() < 1e-15 && n2.im == 0.0);
        let n2 = appleton_hartree_n2(0.0, 0.4, 0.1, 0.4, IonoMode::Extraordinary).unwrap();
        assert!((n2 - 1.0).norm() < 1e-15);
        let n2 = appleton_hartree_n2(0.3, 0.1, 0.05, 0.4, IonoMode::Ordinary).unwrap();
        assert!(n2.im != 0.0);
    }

    #[test]
    fn appleton_hartree_modes_satisfy_quadratic() {
        // both roots solve the Booker-form quadratic in n^2
        let (x, y, th) = (0.5, 0.1, deg(45.0));
        let o = appleton_hartree_n2(x, y, 0.0, th, IonoMode::Ordinary).unwrap().re;
        let e = appleton_hartree_n2(x, y, 0.0, th, IonoMode::Extraordinary).unwrap().re;
        assert!((o - e).abs() > 1e-3);
        for n2 in [o, e] {
            let u = x / (1.0 - n2);
            let yt2 = (y * th.sin()).powi(2);
            let lhs = 1.0 - yt2 / (2.0 * (1.0 - x)) + ((yt2 * yt2 / (4.0 * (1.0 - x).powi(2))) + (y * th.cos()).powi(2)).sqrt();
            let lhs_x = 1.0 - yt2 / (2.0 * (1.0 - x)) - ((yt2 * yt2 / (4.0 * (1.0 - x).powi(2))) + (y * th.cos()).powi(2)).sqrt();
            assert!((u - lhs).abs() < 1e-12 || (u - lhs_x).abs() < 1e-12);
        }
    }

    #[test]
    fn simplified_index() {
        assert_eq!(simplified_iono_n(0.0, 1e9, IonoOrder::Sqrt).unwrap(), 1.0);
        let n = simplified_iono_n(1e12, 1.5e9, IonoOrder::Linear).unwrap();
        assert!((1.0 - n - 1.7913e-5).abs() < 1e-8);
        assert!(simplified_iono_n(1e12, 1e6, IonoOrder::Sqrt).is_err());
    }

    #[test]
    fn phase_path_static_and_crest_form() {
        let p = |t| PhasePath::new(vec![(Vec3::ZERO, 1.0), (Vec3::new(100.0, 0.0, 0.0), 1.3)], t).unwrap();
        let s = phase_path_doppler(&p(0.0), &p(1.0), 1e9, C).unwrap();
        assert_eq!(s.shift_hz, 0.0);
        assert!(phase_path_doppler(&p(1.0), &p(1.0), 1e9, C).is_err());

        // index switch over length r with r dn / lambda = 5e-4
        let f = 1e6;
        let lambda = C / f;
        let r = 1000.0;
        let dn = 5e-4 * lambda / r;
        let a = PhasePath::new(vec![(Vec3::ZERO, 1.0), (Vec3::new(r, 0.0, 0.0), 1.0)], 0.0).unwrap();
        let b = PhasePath::new(vec![(Vec3::ZERO, 1.0 + dn), (Vec3::new(r, 0.0, 0.0), 1.0 + dn)], 1.0 / f).unwrap();
        let s = phase_path_doppler(&a, &b, f, C).unwrap();
        assert!((s.freq_crest_hz / (f / 1.0005) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flat_layer_limits() {
        let f = 1.5e9;
        let z = flat_iono_doppler(deg(90.0), f, FlatIonoVariant::H0Varying { vz: 10.0 }, C).unwrap();
        assert!((z + f * 10.0 / C).abs() < 1e-9);
        let h = flat_iono_doppler(0.0, f, FlatIonoVariant::H0Varying { vz: 10.0 }, C).unwrap();
        assert_eq!(h, 0.0);
        let a = FlatIonoVariant::AlphaVarying { alpha: 1e6, h0: 1e5, dtheta_dt: 1e-4 };
        assert!(flat_iono_doppler(deg(30.0), f, a, C).unwrap().is_finite());
        assert!(flat_iono_doppler(deg(90.0), f, a, C).is_err());
    }

    #[test]
    fn profiles() {
        let ch = IonoProfile::Chapman { nmax: 1e12, hmax: 3e5, scale_height: 5e4 };
        assert_eq!(profile_ne(&ch, 3e5).unwrap(), 1e12);
        let z1 = profile_ne(&ch, 3.5e5).unwrap() / 1e12;
        assert!((z1 - 0.832_0).abs() < 1e-4);
        let ex = IonoProfile::Exponential { n0: 5e11, alpha: 1e-5, h0: 2e5 };
        assert_eq!(profile_ne(&ex, 2e5).unwrap(), 5e11);
        assert_eq!(profile_ne(&ex, 1e5).unwrap(), 0.0);
    }

    #[test]
    fn tec_rate() {
        let d = tec_doppler(1e14, 1.5e9, C).unwrap();
        assert!((d - 8.96e-3).abs() < 1e-5);
        assert!(tec_doppler(-1e14, 1.5e9, C).unwrap() < 0.0);
        let csv = "t_unix_s,vtec_tecu\n0,10\n60,12\n120,14\n180,16\n";
        let s = TecSeries::from_reader(csv.as_bytes()).unwrap();
        let (v, dv) = s.vtec(90.0).unwrap();
        assert!((v - 13e16).abs() < 1e3 && (dv - TECU / 30.0).abs() < 1e-3 * TECU);
        assert!(s.vtec(200.0).is_err());
        assert!((slant_factor(deg(90.0), 6.371e6, SHELL_HEIGHT) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn refractivity() {
        let n = tropo_refractivity(1013.0, 10.0, 288.0).unwrap();
        assert!((n - 318.0).abs() < 0.5);
        assert!(tropo_refractivity(1013.0, 10.0, 290.0).unwrap() < n);
    }

    fn quartic(h0d: f64) -> TropoProfile {
        TropoProfile { model: TropoModel::Quartic { n_td: 315.0, h0d, n_tw: 50.0, h0w: 12e3 }, h_t: 0.0 }
    }

    #[test]
    fn quartic_matches_reference_values() {
        let e = EarthModel::default();
        // single components against 40-digit evaluations of the closed form
        let cases = [(50.0, 12e3, 60.0, 79924.841643820143387), (315.0, 40e3, 30.0, 8630801.6238245531669),
            (50.0, 12e3, 5.0, 14076876.947421884425), (315.0, 40e3, 89.5, 21946.687350133325956)];
        for (n, h0, d, want) in cases {
            let got = n * e.radius * quartic_f4(e.radius, h0, deg(d));
            assert!((got / want - 1.0).abs() < 1e-13, "{d}: {got} vs {want}");
        }
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let e = EarthModel::default();
        let quad = TropoProfile { model: TropoModel::Quadratic { n_t: 315.0, h0: 43e3 }, h_t: 0.0 };
        for d in [5.0, 10.0, 30.0, 60.0, 89.0] {
            for p in [quartic(40e3), quad] {
                let a = tropo_ftheta(&p, deg(d), &e, FthetaMethod::ClosedForm).unwrap().value;
                let b = tropo_ftheta(&p, deg(d), &e, FthetaMethod::Quadrature).unwrap().value;
                assert!((a / b - 1.0).abs() < 1e-8, "{d}: {a} vs {b}");
            }
        }
        let z = tropo_ftheta(&quartic(40e3), deg(90.0), &e, FthetaMethod::ClosedForm).unwrap();
        assert!(z.value.abs() < 1e-6);
        assert!(tropo_ftheta(&quad, deg(2.0), &e, FthetaMethod::ClosedForm).unwrap().low_elevation);
    }

    #[test]
    fn gps_elevation_rate() {
        let e = EarthModel::default();
        let omega = 2.0 * std::f64::consts::PI / 43082.0;
        let rs = 26_560e3;
        let r0 = elevation_rate(0.0, &e, rs, 0.0, omega, ElevationRateBranch::Approximate).unwrap();
        assert!((r0 + 1.92e-4).abs() < 1e-6);
        assert!((r0 + omega * rs / (rs - e.radius)).abs() < 1e-18);
        let a = elevation_rate(1000.0, &e, rs, 0.0, omega, ElevationRateBranch::Approximate).unwrap();
        let b = elevation_rate(-1000.0, &e, rs, 0.0, omega, ElevationRateBranch::Approximate).unwrap();
        assert_eq!(a, b);
        let pi = elevation_rate(std::f64::consts::PI / omega, &e, rs, 0.0, omega, ElevationRateBranch::Exact).unwrap();
        assert!((pi + omega * rs / (rs + e.radius)).abs() < 1e-16);
    }
}

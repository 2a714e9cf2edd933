//! End-to-end pipelines: bistatic target sensing with velocity inversion and
//! the satellite-navigation Doppler budget.

use serde::{Deserialize, Serialize};

use crate::atmosphere::{profile_ne, tropo_doppler, tropo_ftheta, FthetaMethod, IonoProfile, TropoModel, TropoProfile, KAPPA};
use crate::core::{distance_change, solve_light_time, EarthModel, Motion, Trajectory, Vec3, C};
use crate::error::{domain, ensure_finite, ensure_positive, numeric, DopplerError, Result};
use crate::numeric::{fixed_gauss, step_settled};

/// Angles of the sensing layout (rad) and carrier frequency (Hz).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensingGeometry {
    /// Half the transmitter-object-sensor A angle
    pub alpha: f64,
    /// Diffraction angle towards sensor B
    pub beta: f64,
    /// Angle between the object velocity and the transmitter-object line
    pub theta_t: f64,
    pub f: f64,
}

impl SensingGeometry {
    pub fn validate(&self) -> Result<()> {
        for (name, a) in [("alpha", self.alpha), ("beta", self.beta), ("theta_T", self.theta_t)] {
            if !(0.0..std::f64::consts::PI).contains(&a) {
                return domain(format!("{name} must lie in [0, pi)"));
            }
        }
        ensure_positive("f", self.f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SensingScenario {
    /// Reflection towards sensor A
    ReflectA,
    /// Diffraction towards sensor B
    DiffractB,
    /// Transmitter and sensor co-located
    Monostatic,
}

/// Doppler shift seen by the chosen sensor for an object moving at `speed`.
pub fn bistatic_doppler(geom: &SensingGeometry, speed: f64, scenario: SensingScenario, c: f64) -> Result<f64> {
    geom.validate()?;
    if !(speed.abs() < c) {
        return domain("speed must stay below c");
    }
    let k = -geom.f * speed / c;
    let th = geom.theta_t;
    Ok(match scenario {
        SensingScenario::ReflectA => k * (th.cos() + (2.0 * geom.alpha + th).cos()),
        SensingScenario::DiffractB => k * (th.cos() + (geom.beta - th).cos()),
        SensingScenario::Monostatic => 2.0 * k * th.cos(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetVelocity {
    pub speed: f64,
    /// `None` when the object is at rest
    pub theta_t: Option<f64>,
}

/// Recovers speed and heading from the two bistatic shifts.
///
/// Both shifts are linear in `(v cos theta_T, v sin theta_T)`; the 2x2 system
/// is singular when `cos(alpha) cos(beta / 2) sin(alpha + beta / 2) = 0`.
pub fn invert_target_velocity(fd_a: f64, fd_b: f64, alpha: f64, beta: f64, f: f64, c: f64) -> Result<TargetVelocity> {
    ensure_positive("f", f)?;
    ensure_finite("fD_A", fd_a)?;
    ensure_finite("fD_B", fd_b)?;
    let conditioning = alpha.cos() * (0.5 * beta).cos() * (alpha + 0.5 * beta).sin();
    if conditioning.abs() < 1e-10 {
        return numeric(format!(
            "sensing geometry is singular (alpha = {alpha}, beta = {beta}): cos(a) cos(b/2) sin(a + b/2) = {conditioning:e}"
        ));
    }
    if fd_a == 0.0 && fd_b == 0.0 {
        return Ok(TargetVelocity { speed: 0.0, theta_t: None });
    }
    let (a11, a12) = (1.0 + (2.0 * alpha).cos(), -(2.0 * alpha).sin());
    let (a21, a22) = (1.0 + beta.cos(), beta.sin());
    let (b1, b2) = (-fd_a * c / f, -fd_b * c / f);
    let det = a11 * a22 - a12 * a21;
    let x = (b1 * a22 - a12 * b2) / det;
    let y = (a11 * b2 - a21 * b1) / det;
    let speed = x.hypot(y);
    if !(speed < c) {
        return numeric("recovered speed is not below c");
    }
    Ok(TargetVelocity { speed, theta_t: Some(y.atan2(x)) })
}

/// Ground station given in the Earth-fixed frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StationSpec {
    pub position_ecef: Vec3,
    #[serde(default)]
    pub velocity_ecef: Vec3,
}

/// Which budget terms are modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BudgetFlags {
    pub gravity: bool,
    pub special_relativity: bool,
    pub rotation: bool,
    pub ionosphere: bool,
    pub troposphere: bool,
}

impl Default for BudgetFlags {
    fn default() -> Self {
        BudgetFlags { gravity: true, special_relativity: true, rotation: true, ionosphere: true, troposphere: true }
    }
}

impl BudgetFlags {
    pub const NONE: BudgetFlags =
        BudgetFlags { gravity: false, special_relativity: false, rotation: false, ionosphere: false, troposphere: false };
}

fn default_c() -> f64 {
    C
}

/// Satellite in inertial coordinates tracked by a ground station.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatNavScenario {
    pub satellite: Trajectory,
    pub station: StationSpec,
    #[serde(default)]
    pub earth: EarthModel,
    pub f1: f64,
    pub f2: f64,
    #[serde(default)]
    pub iono: Option<IonoProfile>,
    #[serde(default)]
    pub tropo: Option<TropoProfile>,
    #[serde(default)]
    pub flags: BudgetFlags,
    #[serde(default = "default_c")]
    pub c: f64,
}

/// Station position in the inertial frame: `R_ce(t) (r0 + v t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationTrack {
    pub r0: Vec3,
    pub v: Vec3,
    pub omega: f64,
}

fn spin(theta: f64, q: Vec3) -> Vec3 {
    let (s, c) = theta.sin_cos();
    Vec3::new(c * q.x - s * q.y, s * q.x + c * q.y, q.z)
}

impl Motion for StationTrack {
    fn position(&self, t: f64) -> Vec3 {
        spin(self.omega * t, self.r0 + self.v * t)
    }

    fn velocity(&self, t: f64) -> Vec3 {
        let q = self.r0 + self.v * t;
        spin(self.omega * t, self.v) + Vec3::new(0.0, 0.0, self.omega).cross(spin(self.omega * t, q))
    }

    fn displacement(&self, t: f64, dt: f64) -> Vec3 {
        // (R(t+dt) - R(t)) q(t) + R(t+dt) v dt, with the rotation difference
        // written through half-angle sines
        let q = self.r0 + self.v * t;
        let mid = self.omega * (t + 0.5 * dt);
        let (s, c) = mid.sin_cos();
        let k = 2.0 * (0.5 * self.omega * dt).sin();
        let turn = Vec3::new(-s * q.x - c * q.y, c * q.x - s * q.y, 0.0) * k;
        turn + spin(self.omega * (t + dt), self.v * dt)
    }
}

/// Slant-path excess `integral (n - 1) dp` split by layer (m).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PathExcess {
    pub tropo: f64,
    pub iono: f64,
}

impl PathExcess {
    pub fn total(&self) -> f64 {
        self.tropo + self.iono
    }
}

const EXCESS_PANELS: usize = 64;

impl SatNavScenario {
    pub fn validate(&self) -> Result<()> {
        self.satellite.validate()?;
        self.earth.validate()?;
        ensure_positive("f1", self.f1)?;
        ensure_positive("f2", self.f2)?;
        ensure_positive("c", self.c)?;
        if self.f1 == self.f2 {
            return domain("f1 and f2 must differ");
        }
        if !self.station.position_ecef.is_finite() || !self.station.velocity_ecef.is_finite() {
            return domain("station state must be finite");
        }
        if let Some(p) = &self.iono {
            p.validate()?;
        }
        if let Some(p) = &self.tropo {
            p.validate()?;
        }
        if let Trajectory::Circular { center, radius, .. } = self.satellite {
            if center.norm() == 0.0 && !(radius > self.earth.radius) {
                return domain("orbit radius must exceed the Earth radius");
            }
        }
        Ok(())
    }

    pub fn station_track(&self) -> StationTrack {
        let omega = if self.flags.rotation { self.earth.omega_e } else { 0.0 };
        StationTrack { r0: self.station.position_ecef, v: self.station.velocity_ecef, omega }
    }

    fn potential(&self, r: f64) -> f64 {
        -self.earth.gm / r
    }

    /// Atmospheric excess along the straight segment from `from` (station) to `to`.
    pub fn path_excess(&self, from: Vec3, to: Vec3, f: f64) -> Result<PathExcess> {
        let d = to - from;
        let len = d.norm();
        if len == 0.0 {
            return Ok(PathExcess::default());
        }
        let u = d / len;
        let b = from.dot(u);
        if b < 0.0 {
            return domain("satellite is below the station horizon");
        }
        let r = self.earth.radius;
        let from_sq = from.norm_sq();
        // distance along the ray at which altitude h is reached
        let s_at = |h: f64| -> f64 {
            let q = b * b + (r + h) * (r + h) - from_sq;
            if q <= 0.0 {
                0.0
            } else {
                (q.sqrt() - b).clamp(0.0, len)
            }
        };
        let alt = |s: f64| (from + u * s).norm() - r;
        let mut out = PathExcess::default();
        if self.flags.troposphere {
            if let Some(tp) = &self.tropo {
                let tops: Vec<f64> = match tp.model {
                    TropoModel::Quadratic { h0, .. } | TropoModel::Measured { h0, .. } => vec![h0],
                    TropoModel::Quartic { h0d, h0w, .. } => vec![h0w.min(h0d), h0w.max(h0d)],
                };
                let mut lo = 0.0;
                for top in tops {
                    let hi = s_at(top);
                    if hi > lo {
                        // profile validated with the scenario
                        out.tropo +=
                            fixed_gauss(|s| 1e-6 * tp.refractivity(alt(s)).unwrap_or(0.0), lo, hi, EXCESS_PANELS);
                        lo = hi;
                    }
                }
            }
        }
        if self.flags.ionosphere {
            if let Some(ip) = &self.iono {
                let (h_lo, h_hi) = match *ip {
                    IonoProfile::FlatLinear { h0, .. } => (h0, f64::INFINITY),
                    IonoProfile::Exponential { alpha, h0, .. } => {
                        (h0, if alpha > 0.0 { h0 + 40.0 / alpha } else { f64::INFINITY })
                    }
                    IonoProfile::Chapman { hmax, scale_height, .. } => {
                        ((hmax - 10.0 * scale_height).max(0.0), hmax + 60.0 * scale_height)
                    }
                };
                let lo = s_at(h_lo);
                let hi = if h_hi.is_finite() { s_at(h_hi) } else { len };
                if hi > lo {
                    let scale = -KAPPA / (2.0 * f * f);
                    out.iono = scale
                        * fixed_gauss(|s| profile_ne(ip, alt(s).max(0.0)).unwrap_or(0.0), lo, hi, 4 * EXCESS_PANELS);
                }
            }
        }
        Ok(out)
    }
}

/// First-order interference terms `(I_G, I_S)` at epoch `t`.
pub fn satnav_interference_terms(scn: &SatNavScenario, t: f64) -> Result<(f64, f64)> {
    scn.validate()?;
    let st = scn.station_track();
    let (rs, re) = (scn.satellite.position(t), st.position(t));
    let c2 = scn.c * scn.c;
    let ig = (scn.potential(rs.norm()) - scn.potential(re.norm())) / c2;
    let is = (st.velocity(t).norm_sq() - scn.satellite.velocity(t).norm_sq()) / (2.0 * c2);
    Ok((ig, is))
}

/// Crest-pair geometry in the inertial frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodRatio {
    /// Reception time of the crest emitted at `t0`
    pub t_arrive: f64,
    /// Received crest interval `T'_c` (s)
    pub period_obs: f64,
    /// Slant lengths of the two crests (m)
    pub d1: f64,
    pub d2: f64,
    /// `d2 - d1` without cancellation (m)
    pub path_change: f64,
    /// `1 - (d2 - d1)/(c T_c) + I_Atmo`
    pub ratio: f64,
    /// `T_c / T'_c`
    pub ratio_exact: f64,
    pub i_atmo: f64,
    pub i_tropo: f64,
    pub i_iono: f64,
}

struct CrestPair {
    ratio: PeriodRatio,
    d1: Vec3,
    d2: Vec3,
    t_emit: f64,
    period: f64,
}

fn crest_pair(scn: &SatNavScenario, f: f64, t0: f64, tc: f64) -> Result<CrestPair> {
    scn.validate()?;
    ensure_positive("f", f)?;
    ensure_positive("T_c", tc)?;
    let c = scn.c;
    let sat = &scn.satellite;
    let st = scn.station_track();
    let light = |e: DopplerError| match e {
        DopplerError::Numeric(m) | DopplerError::Domain(m) => DopplerError::Numeric(format!("light-time: {m}")),
        other => other,
    };

    let ps = sat.position(t0);
    let mut tau = solve_light_time(sat, &st, t0, c).map_err(light)?.delay;
    let mut converged = false;
    let mut prev = f64::INFINITY;
    for _ in 0..50 {
        let po = st.position(t0 + tau);
        let d = po - ps;
        let ex = scn.path_excess(po, ps, f)?;
        let dist = d.norm();
        let rec = d.dot(st.velocity(t0 + tau)) / dist;
        let step = (c * tau - dist - ex.total()) / (c - rec);
        tau -= step;
        if step_settled(step, &mut prev, tau, 4.0 * f64::EPSILON) {
            converged = true;
            break;
        }
    }
    if !converged {
        return numeric("light-time with atmospheric delay did not converge");
    }
    let t1 = t0 + tau;
    let po1 = st.position(t1);
    let e1 = scn.path_excess(po1, ps, f)?;
    let d1 = po1 - ps;
    let ps2 = sat.position(t0 + tc);
    let src_step = sat.displacement(t0, tc);

    let mut delta = 0.0;
    let mut prev = f64::INFINITY;
    for it in 0.. {
        if it == 100 {
            return numeric("crest interval with atmospheric delay did not converge");
        }
        let tp = tc + delta;
        let step_vec = st.displacement(t1, tp) - src_step;
        let dd = distance_change(d1, step_vec);
        let po2 = po1 + st.displacement(t1, tp);
        let e2 = scn.path_excess(po2, ps2, f)?;
        let d2 = d1 + step_vec;
        let rec = d2.dot(st.velocity(t1 + tp)) / d2.norm();
        let h = delta - (dd + e2.total() - e1.total()) / c;
        let step = h / (1.0 - rec / c);
        delta -= step;
        if step_settled(step, &mut prev, tc, 1e-16) {
            let tp = tc + delta;
            let step_vec = st.displacement(t1, tp) - src_step;
            let path_change = distance_change(d1, step_vec);
            let e2 = scn.path_excess(po1 + st.displacement(t1, tp), ps2, f)?;
            let d2 = d1 + step_vec;
            let i_tropo = -(e2.tropo - e1.tropo) / (c * tc);
            let i_iono = -(e2.iono - e1.iono) / (c * tc);
            let i_atmo = i_tropo + i_iono;
            let kin = path_change / (c * tc);
            let ratio = PeriodRatio {
                t_arrive: t1,
                period_obs: tp,
                d1: d1.norm(),
                d2: d2.norm(),
                path_change,
                ratio: 1.0 - kin + i_atmo,
                ratio_exact: 1.0 / (1.0 + kin - i_atmo),
                i_atmo,
                i_tropo,
                i_iono,
            };
            return Ok(CrestPair { ratio, d1, d2, t_emit: t0, period: tc });
        }
    }
    unreachable!()
}

/// Period ratio of two crests emitted at `t0` and `t0 + T_c` on carrier `f`.
pub fn satnav_period_ratio(scn: &SatNavScenario, f: f64, t0: f64, tc: f64) -> Result<PeriodRatio> {
    Ok(crest_pair(scn, f, t0, tc)?.ratio)
}

/// Doppler budget on carrier `f`; every field in Hz except the elevation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DopplerBudget {
    pub f: f64,
    /// `-f (d2 - d1) / (c T_c)`
    pub kinematic: f64,
    /// Mean-velocity slant Doppler
    pub mean_velocity: f64,
    pub i_g: f64,
    pub i_s: f64,
    pub i_t: f64,
    pub i_i: f64,
    /// `-(mean_velocity + f (d2 - d1) / (c T_c))`
    pub sagnac: f64,
    /// `mean_velocity + sagnac + i_g + i_s + i_t + i_i`
    pub total: f64,
    /// Elevation of the satellite at the first crest (rad)
    pub elevation: f64,
    pub low_elevation: bool,
}

impl DopplerBudget {
    pub fn components_sum(&self) -> f64 {
        self.mean_velocity + self.sagnac + self.i_g + self.i_s + self.i_t + self.i_i
    }
}

/// Elevation of `target` seen from `station` and its rate, on a spherical Earth.
pub fn elevation_and_rate(station: Vec3, v_station: Vec3, target: Vec3, v_target: Vec3) -> (f64, f64) {
    let d = target - station;
    let rho = d.norm();
    let s_hat = d / rho;
    let r = station.norm();
    let e = station / r;
    let sin_el = e.dot(s_hat).clamp(-1.0, 1.0);
    let dd = v_target - v_station;
    let s_dot = (dd - s_hat * s_hat.dot(dd)) / rho;
    let e_dot = (v_station - e * e.dot(v_station)) / r;
    let rate_sin = e_dot.dot(s_hat) + e.dot(s_dot);
    let el = sin_el.asin();
    (el, rate_sin / el.cos())
}

/// Ideal slant Doppler `-f (v_s - v_o) . r_hat / c` at a single epoch.
pub fn slant_doppler(scn: &SatNavScenario, f: f64, t: f64) -> Result<f64> {
    scn.validate()?;
    let st = scn.station_track();
    let r_hat = (scn.satellite.position(t) - st.position(t)).unit();
    Ok(-f * (scn.satellite.velocity(t) - st.velocity(t)).dot(r_hat) / scn.c)
}

pub fn satnav_doppler_budget(scn: &SatNavScenario, f: f64, t0: f64, tc: f64) -> Result<DopplerBudget> {
    let pair = crest_pair(scn, f, t0, tc)?;
    let pr = pair.ratio;
    let c = scn.c;
    let st = scn.station_track();
    let sat = &scn.satellite;
    let t1 = pr.t_arrive;

    let kinematic = -f * pr.path_change / (c * tc);

    // satellite averaged over its emission interval, station over its
    // reception interval; line of sight along the bisector of the two slants
    let vs_bar = sat.displacement(pair.t_emit, pair.period) / pair.period;
    let vo_bar = st.displacement(t1, pr.period_obs) / pr.period_obs;
    let r_hat = -(pair.d1.unit() + pair.d2.unit()).unit();
    let mean_velocity = -f * (vs_bar - vo_bar).dot(r_hat) / c;
    let sagnac = -(mean_velocity + f * pr.path_change / (c * tc));

    let c2 = c * c;
    let rs = sat.position(t0);
    let ro = st.position(t1);
    let i_g = if scn.flags.gravity { f * (scn.potential(rs.norm()) - scn.potential(ro.norm())) / c2 } else { 0.0 };
    let i_s = if scn.flags.special_relativity {
        f * (st.velocity(t1).norm_sq() - sat.velocity(t0).norm_sq()) / (2.0 * c2)
    } else {
        0.0
    };

    let (elevation, el_rate) = elevation_and_rate(ro, st.velocity(t1), rs, sat.velocity(t0));
    let mut low_elevation = false;
    let i_t = match (&scn.tropo, scn.flags.troposphere) {
        (Some(tp), true) => {
            let ft = tropo_ftheta(tp, elevation, &scn.earth, FthetaMethod::ClosedForm)?;
            low_elevation = ft.low_elevation;
            tropo_doppler(f, ft.value, el_rate, c)?
        }
        _ => 0.0,
    };
    let i_i = f * pr.i_iono;

    let mut b = DopplerBudget {
        f,
        kinematic,
        mean_velocity,
        i_g,
        i_s,
        i_t,
        i_i,
        sagnac,
        total: 0.0,
        elevation,
        low_elevation,
    };
    b.total = b.components_sum();
    Ok(b)
}

/// `f2 fD(f2) - f1 fD(f1)`; removes any shift component proportional to `1/f`.
pub fn dual_frequency_combine(fd_f1: f64, fd_f2: f64, f1: f64, f2: f64) -> Result<f64> {
    ensure_positive("f1", f1)?;
    ensure_positive("f2", f2)?;
    if f1 == f2 {
        return Err(DopplerError::Input("dual-frequency combination needs two distinct carriers".into()));
    }
    Ok(f2 * fd_f2 - f1 * fd_f1)
}

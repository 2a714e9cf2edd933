//! Scenario kinds: one per operation family, each mapping grid epochs to a
//! row of output columns.

use std::path::PathBuf;

use serde::Deserialize;

use doppler::acoustic::{acoustic_shift, mach_info, medium_wave_params, AcousticScenario};
use doppler::applications::{
    bistatic_doppler, dual_frequency_combine, invert_target_velocity, satnav_doppler_budget, SatNavScenario, SensingGeometry, SensingScenario,
};
use doppler::atmosphere::{
    appleton_hartree_n2, elevation_rate, flat_iono_doppler, phase_path_doppler, simplified_iono_n, tec_doppler,
    tropo_doppler, tropo_ftheta, ElevationRateBranch, FlatIonoVariant, FthetaMethod, IonoMode, IonoOrder,
    IonoProfile, PhasePath, TecSeries, TropoProfile, KAPPA, SHELL_HEIGHT,
};
use doppler::classical::{
    circular_doppler, circular_doppler_approx, close_zone_period, far_field_shift, general_motion_frequency,
    linear_accel_doppler, two_event_period, AccelBranch, AcceleratedRange, CircularMode, CloseZoneConfig,
    DopplerSample, GeneralMotion, Mover, ObserverSolver, Range,
};
use doppler::core::{elevation_angle, solve_light_time, EarthModel, Motion, Trajectory, Vec3};
use doppler::gravity_accel::{
    accel_frame_shift_exact, accel_frame_shift_first_order, accumulated_offset, friedman_shift, gravitational_shift,
    rotor_dilation_exact, rotor_energy_shift, schwarzschild_ratio, AccelFrameConfig, PotentialSpec, A_MAX_FRIEDMAN,
    K_CLOCK_POSTULATE,
};
use doppler::oracle::{simulate_crests, CrestConfig};
use doppler::relativistic::{
    circular_relativistic, general_motion_shift, rel_accel_average_velocity, AveragingSpan, MediumSpec,
    MotionAverages, RelCircularMode,
};
use doppler::{DopplerError, Result};

use crate::error::CliResult;
use crate::scenario::BuildCtx;

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub values: Vec<f64>,
    pub warnings: Vec<String>,
}

impl Row {
    fn new(values: Vec<f64>) -> Self {
        Row { values, warnings: Vec::new() }
    }

    fn warn_if(mut self, cond: bool, msg: impl Into<String>) -> Self {
        if cond {
            self.warnings.push(msg.into());
        }
        self
    }
}

pub trait Family: Sync + Send {
    /// Column names; the first is always `t_s`.
    fn columns(&self) -> Vec<&'static str>;
    fn row(&self, t: f64) -> Result<Row>;
    /// Warnings that hold for the whole scenario.
    fn notes(&self) -> Vec<String> {
        Vec::new()
    }
    fn oracle(&self) -> Option<&dyn Oracle> {
        None
    }
}

/// Closed form checked against an independent reference.
pub trait Oracle: Sync {
    /// Name of the compared quantity
    fn quantity(&self) -> &'static str;
    /// Largest relative deviation that passes
    fn tolerance(&self) -> f64 {
        1e-9
    }
    /// `(closed form, reference)` at epoch `t`
    fn compare(&self, t: f64) -> Result<(f64, f64)>;
}

/// Registry entry.
pub struct Kind {
    pub tag: &'static str,
    pub module: &'static str,
    /// Required parameters, comma separated; optional ones in brackets
    pub params: &'static str,
    pub about: &'static str,
    pub build: fn(&BuildCtx) -> CliResult<Box<dyn Family>>,
}

impl Kind {
    /// Whether `verify` is available; decided by the built family, so this
    /// mirrors the registry table below.
    pub fn has_oracle(&self) -> bool {
        ORACLE_TAGS.contains(&self.tag)
    }
}

const ORACLE_TAGS: &[&str] =
    &["circular-doppler", "close-zone", "general-motion", "linear-accel", "satnav-budget", "troposphere", "uniform-motion"];

const DOPPLER: [&str; 3] = ["t_s", "f_obs_hz", "f_shift_hz"];

fn cols(extra: &[&'static str]) -> Vec<&'static str> {
    DOPPLER.iter().chain(extra).copied().collect()
}

fn sample_row(t: f64, s: &DopplerSample, extra: &[f64]) -> Row {
    let mut v = vec![t, s.freq_obs, s.shift];
    v.extend_from_slice(extra);
    Row::new(v)
}

fn shift_row(t: f64, f: f64, shift: f64, extra: &[f64]) -> Row {
    let mut v = vec![t, f + shift, shift];
    v.extend_from_slice(extra);
    Row::new(v)
}

fn crest_frequency(src: &dyn Motion, obs: &dyn Motion, f: f64, t0: f64, c: f64) -> Result<f64> {
    let r = simulate_crests(src, obs, &CrestConfig::new(f, 2, t0, c))?;
    if !r.in_order() {
        return Err(DopplerError::Domain("crests arrive out of order".into()));
    }
    Ok(1.0 / r.periods[0])
}

fn boxed<F: Family + 'static>(f: F) -> CliResult<Box<dyn Family>> {
    Ok(Box::new(f))
}

fn opt(x: Option<f64>) -> f64 {
    x.unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------- classical

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FarFieldParams {
    #[serde(default)]
    v_src: f64,
    #[serde(default)]
    theta_src: f64,
    #[serde(default)]
    v_obs: f64,
    #[serde(default)]
    theta_obs: f64,
    f: f64,
    #[serde(default)]
    wave_speed: Option<f64>,
}

struct FarField {
    p: FarFieldParams,
    c: f64,
}

impl Family for FarField {
    fn columns(&self) -> Vec<&'static str> {
        cols(&[])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let s = far_field_shift(p.v_src, p.theta_src, p.v_obs, p.theta_obs, p.f, self.c)?;
        Ok(sample_row(t, &s, &[]))
    }
}

fn build_far_field(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: FarFieldParams = ctx.parse()?;
    let c = p.wave_speed.unwrap_or(ctx.c);
    boxed(FarField { p, c })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CloseZoneParams {
    r1: f64,
    v: f64,
    theta: f64,
    f: f64,
    mover: Mover,
    #[serde(default)]
    wave_speed: Option<f64>,
}

struct CloseZone {
    cfg: CloseZoneConfig,
}

impl Family for CloseZone {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["approx_ratio"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let r = close_zone_period(&self.cfg)?;
        Ok(sample_row(t, &r.sample, &[r.approx_ratio]))
    }
    fn oracle(&self) -> Option<&dyn Oracle> {
        Some(self)
    }
}

impl Oracle for CloseZone {
    fn quantity(&self) -> &'static str {
        "f_obs_hz"
    }
    fn compare(&self, _t: f64) -> Result<(f64, f64)> {
        let g = &self.cfg;
        let closed = close_zone_period(g)?.sample.freq_obs;
        let vel = Vec3::new(g.theta.cos(), g.theta.sin(), 0.0) * g.v;
        let (src, obs) = match g.mover {
            Mover::Source => (
                Trajectory::Uniform { position: Vec3::ZERO, velocity: vel },
                Trajectory::Static { position: Vec3::new(g.r1, 0.0, 0.0) },
            ),
            Mover::Observer => (
                Trajectory::Static { position: Vec3::ZERO },
                Trajectory::Uniform {
                    position: Vec3::new(g.r1, 0.0, 0.0) - vel * (g.r1 / g.wave_speed),
                    velocity: vel,
                },
            ),
        };
        Ok((closed, crest_frequency(&src, &obs, 1.0 / g.period, 0.0, g.wave_speed)?))
    }
}

fn build_close_zone(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: CloseZoneParams = ctx.parse()?;
    let cfg = CloseZoneConfig {
        r1: p.r1,
        v: p.v,
        theta: p.theta,
        period: 1.0 / p.f,
        wave_speed: p.wave_speed.unwrap_or(ctx.c),
        mover: p.mover,
    };
    cfg.validate().map_err(|e| ctx.invalid(e))?;
    boxed(CloseZone { cfg })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UniformParams {
    source: Trajectory,
    observer: Trajectory,
    f: f64,
    #[serde(default)]
    wave_speed: Option<f64>,
}

struct Uniform {
    src: Trajectory,
    obs: Trajectory,
    f: f64,
    c: f64,
}

impl Family for Uniform {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["delay_s"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let s = two_event_period(&self.src, &self.obs, t, 1.0 / self.f, self.c)?;
        let lt = solve_light_time(&self.src, &self.obs, t, self.c)?;
        Ok(sample_row(t, &s, &[lt.delay]))
    }
    fn oracle(&self) -> Option<&dyn Oracle> {
        Some(self)
    }
}

impl Oracle for Uniform {
    fn quantity(&self) -> &'static str {
        "f_obs_hz"
    }
    fn compare(&self, t: f64) -> Result<(f64, f64)> {
        let closed = two_event_period(&self.src, &self.obs, t, 1.0 / self.f, self.c)?.freq_obs;
        Ok((closed, crest_frequency(&self.src, &self.obs, self.f, t, self.c)?))
    }
}

fn build_uniform(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: UniformParams = ctx.parse()?;
    for (name, tr) in [("source", &p.source), ("observer", &p.observer)] {
        if !matches!(tr, Trajectory::Static { .. } | Trajectory::Uniform { .. }) {
            return Err(ctx.invalid(DopplerError::Domain(format!("{name} must be a static or uniform trajectory"))));
        }
    }
    if !(p.f > 0.0) {
        return Err(ctx.invalid(DopplerError::Domain("f must be positive".into())));
    }
    let c = p.wave_speed.unwrap_or(ctx.c);
    boxed(Uniform { src: p.source, obs: p.observer, f: p.f, c })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LinearAccelParams {
    r0: f64,
    #[serde(default)]
    v0: f64,
    #[serde(default)]
    a: f64,
    f: f64,
    #[serde(default)]
    wave_speed: Option<f64>,
}

struct LinearAccel {
    p: LinearAccelParams,
    c: f64,
}

impl Family for LinearAccel {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["approx_shift_hz", "accel_term_hz"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let r = linear_accel_doppler(p.r0, p.v0, p.a, t, 1.0 / p.f, p.f, self.c)?;
        Ok(sample_row(t, &r.sample, &[opt(r.approx_shift), opt(r.accel_term)])
            .warn_if(r.speed_warning, "source speed reaches 1% of the wave speed; the non-relativistic form is outside its validity range")
            .warn_if(r.branch == AccelBranch::PassThrough, "source passes the observer within one period"))
    }
    fn oracle(&self) -> Option<&dyn Oracle> {
        Some(self)
    }
}

impl Oracle for LinearAccel {
    fn quantity(&self) -> &'static str {
        "f_obs_hz"
    }
    fn compare(&self, t: f64) -> Result<(f64, f64)> {
        let p = &self.p;
        let closed = linear_accel_doppler(p.r0, p.v0, p.a, t, 1.0 / p.f, p.f, self.c)?.sample.freq_obs;
        let src = Trajectory::LinearAccel { r0: p.r0, v0: p.v0, a: p.a, axis: Vec3::X };
        let obs = Trajectory::Static { position: Vec3::ZERO };
        Ok((closed, crest_frequency(&src, &obs, p.f, t, self.c)?))
    }
}

fn build_linear_accel(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: LinearAccelParams = ctx.parse()?;
    let c = p.wave_speed.unwrap_or(ctx.c);
    boxed(LinearAccel { p, c })
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct RangeParams {
    r0: f64,
    #[serde(default)]
    v0: f64,
    #[serde(default)]
    a: f64,
}

impl From<RangeParams> for AcceleratedRange {
    fn from(r: RangeParams) -> Self {
        AcceleratedRange { r0: r.r0, v0: r.v0, a: r.a }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
enum GeneralMover {
    Source,
    Observer,
    Both,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneralParams {
    mover: GeneralMover,
    #[serde(default)]
    source: Option<RangeParams>,
    #[serde(default)]
    observer: Option<RangeParams>,
    f: f64,
    #[serde(default)]
    wave_speed: Option<f64>,
}

struct General {
    mover: GeneralMover,
    source: AcceleratedRange,
    observer: AcceleratedRange,
    f: f64,
    c: f64,
}

impl General {
    fn sample(&self, t: f64) -> Result<DopplerSample> {
        let m = match self.mover {
            GeneralMover::Source => GeneralMotion::SourceMoving(&self.source),
            GeneralMover::Observer => GeneralMotion::ObserverMoving(&self.observer),
            GeneralMover::Both => GeneralMotion::Both { source: &self.source, observer: &self.observer },
        };
        general_motion_frequency(m, t, 1.0 / self.f, self.c)
    }
}

impl Family for General {
    fn columns(&self) -> Vec<&'static str> {
        cols(&[])
    }
    fn row(&self, t: f64) -> Result<Row> {
        Ok(sample_row(t, &self.sample(t)?, &[]))
    }
    fn oracle(&self) -> Option<&dyn Oracle> {
        Some(self)
    }
}

impl Oracle for General {
    fn quantity(&self) -> &'static str {
        "f_obs_hz"
    }
    fn compare(&self, t: f64) -> Result<(f64, f64)> {
        let closed = self.sample(t)?.freq_obs;
        let (s, o) = (&self.source, &self.observer);
        let origin = Trajectory::Static { position: Vec3::ZERO };
        let src_line = Trajectory::LinearAccel { r0: s.r0, v0: -s.v0, a: -s.a, axis: Vec3::X };
        let obs_line = Trajectory::LinearAccel { r0: -o.r0, v0: o.v0, a: o.a, axis: Vec3::X };
        let reference = match self.mover {
            GeneralMover::Source => crest_frequency(&src_line, &origin, self.f, t, self.c)?,
            // `t` is the reception epoch here
            GeneralMover::Observer => crest_frequency(&origin, &obs_line, self.f, t - o.range(t) / self.c, self.c)?,
            GeneralMover::Both => crest_frequency(&src_line, &obs_line, self.f, t, self.c)?,
        };
        Ok((closed, reference))
    }
}

fn build_general(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: GeneralParams = ctx.parse()?;
    let need = |name: &str, r: Option<RangeParams>| {
        r.map(AcceleratedRange::from)
            .ok_or_else(|| ctx.invalid(DopplerError::Input(format!("mover '{name}' needs params.{name}"))))
    };
    let idle = AcceleratedRange { r0: 0.0, v0: 0.0, a: 0.0 };
    let (source, observer) = match p.mover {
        GeneralMover::Source => (need("source", p.source)?, idle),
        GeneralMover::Observer => (idle, need("observer", p.observer)?),
        GeneralMover::Both => (need("source", p.source)?, need("observer", p.observer)?),
    };
    boxed(General { mover: p.mover, source, observer, f: p.f, c: p.wave_speed.unwrap_or(ctx.c) })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CircularParams {
    radius: f64,
    r0: f64,
    omega: f64,
    f: f64,
    mode: CircularMode,
    #[serde(default)]
    solver: ObserverSolver,
    #[serde(default)]
    wave_speed: Option<f64>,
}

struct Circular {
    p: CircularParams,
    c: f64,
}

impl Circular {
    fn sample(&self, t: f64) -> Result<DopplerSample> {
        let p = &self.p;
        circular_doppler(p.radius, p.r0, p.omega, t, 1.0 / p.f, self.c, p.mode, p.solver)
    }
}

impl Family for Circular {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["approx_shift_hz"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let approx = circular_doppler_approx(p.radius, p.r0, p.omega, t, p.f, self.c);
        Ok(sample_row(t, &self.sample(t)?, &[approx]))
    }
    fn oracle(&self) -> Option<&dyn Oracle> {
        Some(self)
    }
}

impl Oracle for Circular {
    fn quantity(&self) -> &'static str {
        "f_obs_hz"
    }
    fn compare(&self, t: f64) -> Result<(f64, f64)> {
        let p = &self.p;
        let ring = Trajectory::circle(Vec3::ZERO, p.radius, p.omega, 0.0);
        let fixed = Trajectory::Static { position: Vec3::new(-p.r0, 0.0, 0.0) };
        let reference = match p.mode {
            CircularMode::SourceOnCircle => crest_frequency(&ring, &fixed, p.f, t, self.c)?,
            CircularMode::ObserverOnCircle => crest_frequency(&fixed, &ring, p.f, t, self.c)?,
        };
        Ok((self.sample(t)?.freq_obs, reference))
    }
}

fn build_circular(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: CircularParams = ctx.parse()?;
    let c = p.wave_speed.unwrap_or(ctx.c);
    boxed(Circular { p, c })
}

// ------------------------------------------------------------- relativistic

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeMotion {
    #[serde(default)]
    v_line: f64,
    /// Defaults to `|v_line|`
    #[serde(default)]
    speed: Option<f64>,
}

impl NodeMotion {
    fn averages(&self) -> Result<MotionAverages> {
        MotionAverages::new(self.v_line, self.speed.unwrap_or(self.v_line.abs()))
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct MediumParams {
    #[serde(default = "unit_index")]
    refractive_index: f64,
    #[serde(default)]
    flow_speed: f64,
}

fn unit_index() -> f64 {
    1.0
}

impl Default for MediumParams {
    fn default() -> Self {
        MediumParams { refractive_index: 1.0, flow_speed: 0.0 }
    }
}

impl MediumParams {
    fn spec(&self, c: f64) -> MediumSpec {
        MediumSpec { c, refractive_index: self.refractive_index, flow_speed: self.flow_speed }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RelMediumParams {
    #[serde(default)]
    source: Option<NodeMotion>,
    #[serde(default)]
    observer: Option<NodeMotion>,
    #[serde(default)]
    medium: MediumParams,
    f: f64,
}

struct RelMedium {
    src: MotionAverages,
    obs: MotionAverages,
    medium: MediumSpec,
    f: f64,
}

impl Family for RelMedium {
    fn columns(&self) -> Vec<&'static str> {
        cols(&[])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let f_obs = general_motion_shift(&self.src, &self.obs, &self.medium, self.f)?;
        Ok(shift_row(t, self.f, f_obs - self.f, &[]))
    }
}

fn build_rel_medium(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: RelMediumParams = ctx.parse()?;
    let avg = |m: Option<NodeMotion>| m.map_or(Ok(MotionAverages::REST), |m| m.averages()).map_err(|e| ctx.invalid(e));
    let medium = p.medium.spec(ctx.c);
    medium.validate().map_err(|e| ctx.invalid(e))?;
    boxed(RelMedium { src: avg(p.source)?, obs: avg(p.observer)?, medium, f: p.f })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RelAccelParams {
    #[serde(default)]
    v0: f64,
    a: f64,
    f: f64,
    span: AveragingSpan,
    #[serde(default)]
    medium: MediumParams,
}

struct RelAccel {
    p: RelAccelParams,
    medium: MediumSpec,
}

impl Family for RelAccel {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["v_line_mps"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let avg = rel_accel_average_velocity(p.v0, p.a, t, p.span, self.medium.c)?;
        let f_obs = general_motion_shift(&avg, &MotionAverages::REST, &self.medium, p.f)?;
        Ok(shift_row(t, p.f, f_obs - p.f, &[avg.v_line]))
    }
}

fn build_rel_accel(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: RelAccelParams = ctx.parse()?;
    let medium = p.medium.spec(ctx.c);
    medium.validate().map_err(|e| ctx.invalid(e))?;
    boxed(RelAccel { p, medium })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RelCircularParams {
    radius: f64,
    r0: f64,
    omega: f64,
    f: f64,
    mode: RelCircularMode,
    #[serde(default)]
    medium: MediumParams,
}

struct RelCircular {
    p: RelCircularParams,
    medium: MediumSpec,
}

impl Family for RelCircular {
    fn columns(&self) -> Vec<&'static str> {
        cols(&[])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let s = circular_relativistic(p.radius, p.r0, p.omega, t, 1.0 / p.f, p.f, &self.medium, p.mode)?;
        Ok(sample_row(t, &s, &[]))
    }
}

fn build_rel_circular(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: RelCircularParams = ctx.parse()?;
    let medium = p.medium.spec(ctx.c);
    boxed(RelCircular { p, medium })
}

// ---------------------------------------------------------- gravity / accel

struct AccelFrame {
    cfg: AccelFrameConfig,
    c: f64,
}

impl Family for AccelFrame {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["first_order_hz", "exact_minus_first_order_hz", "coordinate_f_hz"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let ex = accel_frame_shift_exact(&self.cfg, self.c)?;
        let fo = accel_frame_shift_first_order(&self.cfg, self.c)?;
        let f = self.cfg.f;
        let shift = fo.shift + ex.minus_first_order_hz;
        Ok(Row::new(vec![t, ex.frequency_hz, shift, fo.freq_obs, ex.minus_first_order_hz, ex.coordinate_frequency_hz])
            .warn_if(!(f + shift).is_finite(), "received frequency is not finite"))
    }
}

fn build_accel_frame(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let cfg: AccelFrameConfig = ctx.parse()?;
    boxed(AccelFrame { cfg, c: ctx.c })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GravityParams {
    source: PotentialSpec,
    observer: PotentialSpec,
    f: f64,
}

struct Gravity {
    p: GravityParams,
    c: f64,
}

impl Family for Gravity {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["clock_offset_s"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let s = gravitational_shift(&p.source, &p.observer, p.f, self.c)?;
        Ok(sample_row(t, &s, &[accumulated_offset(s.shift, p.f, t)]))
    }
}

fn build_gravity(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: GravityParams = ctx.parse()?;
    boxed(Gravity { p, c: ctx.c })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchwarzschildParams {
    r1: f64,
    r2: f64,
    #[serde(default)]
    phi0: f64,
    body: PotentialSpec,
    f: f64,
}

struct Schwarzschild {
    p: SchwarzschildParams,
    c: f64,
}

impl Family for Schwarzschild {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["first_order_shift_hz"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let r = schwarzschild_ratio(p.r1, p.r2, p.phi0, &p.body, self.c)?;
        Ok(Row::new(vec![t, p.f * r.ratio, p.f * r.deviation, p.f * r.first_order]))
    }
}

fn build_schwarzschild(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: SchwarzschildParams = ctx.parse()?;
    if !(p.f > 0.0) {
        return Err(ctx.invalid(DopplerError::Domain("f must be positive".into())));
    }
    boxed(Schwarzschild { p, c: ctx.c })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RotorParams {
    radius: f64,
    omega: f64,
    f: f64,
    #[serde(default = "default_k")]
    k: f64,
    #[serde(default = "default_a_max")]
    a_max: f64,
}

fn default_k() -> f64 {
    K_CLOCK_POSTULATE
}

fn default_a_max() -> f64 {
    A_MAX_FRIEDMAN
}

struct Rotor {
    p: RotorParams,
    c: f64,
}

impl Family for Rotor {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["dilation_shift_hz", "friedman_f_obs_hz"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let v = p.radius * p.omega.abs();
        let a = v * p.omega.abs();
        let e = rotor_energy_shift(v, p.k, self.c)?;
        let d = rotor_dilation_exact(v, self.c)?;
        let fr = friedman_shift(v, a, p.a_max, 1.0, self.c)?;
        Ok(Row::new(vec![t, p.f * (1.0 + e), p.f * e, p.f * d, p.f * fr]))
    }
}

fn build_rotor(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: RotorParams = ctx.parse()?;
    if !(p.radius > 0.0 && p.f > 0.0) {
        return Err(ctx.invalid(DopplerError::Domain("radius and f must be positive".into())));
    }
    boxed(Rotor { p, c: ctx.c })
}

// --------------------------------------------------------------- atmosphere

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhasePathParams {
    path1: PhasePath,
    path2: PhasePath,
    f: f64,
}

struct PhasePaths {
    p: PhasePathParams,
    c: f64,
}

impl Family for PhasePaths {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["excess_change_m"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let s = phase_path_doppler(&p.path1, &p.path2, p.f, self.c)?;
        Ok(Row::new(vec![t, s.freq_crest_hz, s.shift_hz, p.path2.excess() - p.path1.excess()]))
    }
}

fn build_phase_path(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: PhasePathParams = ctx.parse()?;
    p.path1.validate().and(p.path2.validate()).map_err(|e| ctx.invalid(e))?;
    boxed(PhasePaths { p, c: ctx.c })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatIonoParams {
    theta_e: f64,
    f: f64,
    variant: FlatIonoVariant,
}

struct FlatIono {
    p: FlatIonoParams,
    c: f64,
}

impl Family for FlatIono {
    fn columns(&self) -> Vec<&'static str> {
        cols(&[])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let d = flat_iono_doppler(p.theta_e, p.f, p.variant, self.c)?;
        Ok(shift_row(t, p.f, d, &[]))
    }
}

fn build_flat_iono(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: FlatIonoParams = ctx.parse()?;
    boxed(FlatIono { p, c: ctx.c })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IonoIndexParams {
    /// Electron density (el/m^3)
    ne: f64,
    f: f64,
    #[serde(default = "sqrt_order")]
    order: IonoOrder,
    /// Electron gyro frequency (Hz)
    #[serde(default)]
    gyro_frequency: f64,
    /// Collision frequency (1/s)
    #[serde(default)]
    collision_frequency: f64,
    /// Angle between wave vector and geomagnetic field (rad)
    #[serde(default)]
    field_angle: f64,
}

fn sqrt_order() -> IonoOrder {
    IonoOrder::Sqrt
}

struct IonoIndex {
    p: IonoIndexParams,
}

impl Family for IonoIndex {
    fn columns(&self) -> Vec<&'static str> {
        vec!["t_s", "n_simplified", "n2_ordinary_re", "n2_ordinary_im", "n2_extraordinary_re", "n2_extraordinary_im"]
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let n = simplified_iono_n(p.ne, p.f, p.order)?;
        let x = KAPPA * p.ne / (p.f * p.f);
        let y = p.gyro_frequency / p.f;
        let z = p.collision_frequency / (2.0 * std::f64::consts::PI * p.f);
        let o = appleton_hartree_n2(x, y, z, p.field_angle, IonoMode::Ordinary)?;
        let e = appleton_hartree_n2(x, y, z, p.field_angle, IonoMode::Extraordinary)?;
        Ok(Row::new(vec![t, n, o.re, o.im, e.re, e.im]))
    }
}

fn build_iono_index(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: IonoIndexParams = ctx.parse()?;
    boxed(IonoIndex { p })
}

/// Circular orbit passing over the station at `t = 0`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct PassParams {
    /// Orbit radius (m)
    rs: f64,
    /// Orbital angular rate (rad/s)
    omega: f64,
    #[serde(default)]
    h_t: f64,
    #[serde(default)]
    earth: EarthModel,
    #[serde(default)]
    branch: ElevationRateBranch,
}

impl PassParams {
    fn elevation(&self, t: f64) -> Result<(f64, f64)> {
        let el = elevation_angle(t, &self.earth, self.rs, self.h_t, self.omega)?;
        let rate = elevation_rate(t, &self.earth, self.rs, self.h_t, self.omega, self.branch)?;
        Ok((el, rate))
    }

    fn check(&self, ctx: &BuildCtx) -> CliResult<()> {
        self.earth.validate().and(self.elevation(0.0).map(|_| ())).map_err(|e| ctx.invalid(e))
    }
}

struct Elevation {
    pass: PassParams,
}

impl Family for Elevation {
    fn columns(&self) -> Vec<&'static str> {
        vec!["t_s", "elevation_rad", "elevation_rate_rad_s"]
    }
    fn row(&self, t: f64) -> Result<Row> {
        let (el, rate) = self.pass.elevation(t)?;
        Ok(Row::new(vec![t, el, rate]))
    }
}

fn build_elevation(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let pass: PassParams = ctx.parse()?;
    pass.check(ctx)?;
    boxed(Elevation { pass })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TropoParams {
    profile: TropoProfile,
    f: f64,
    pass: PassParams,
    #[serde(default = "closed_form")]
    method: FthetaMethod,
}

fn closed_form() -> FthetaMethod {
    FthetaMethod::ClosedForm
}

struct Tropo {
    p: TropoParams,
    c: f64,
}

impl Tropo {
    fn ftheta(&self, el: f64, method: FthetaMethod) -> Result<doppler::atmosphere::Ftheta> {
        tropo_ftheta(&self.p.profile, el, &self.p.pass.earth, method)
    }
}

impl Family for Tropo {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["elevation_rad", "ftheta_m", "elevation_rate_rad_s"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let (el, rate) = self.p.pass.elevation(t)?;
        let ft = self.ftheta(el, self.p.method)?;
        let d = tropo_doppler(self.p.f, ft.value, rate, self.c)?;
        Ok(shift_row(t, self.p.f, d, &[el, ft.value, rate])
            .warn_if(ft.low_elevation, "elevation below 3 degrees; tropospheric weighting is outside its validity range"))
    }
    fn oracle(&self) -> Option<&dyn Oracle> {
        Some(self)
    }
}

impl Oracle for Tropo {
    fn quantity(&self) -> &'static str {
        "ftheta_m"
    }
    fn tolerance(&self) -> f64 {
        1e-8
    }
    fn compare(&self, t: f64) -> Result<(f64, f64)> {
        let (el, _) = self.p.pass.elevation(t)?;
        Ok((self.ftheta(el, FthetaMethod::ClosedForm)?.value, self.ftheta(el, FthetaMethod::Quadrature)?.value))
    }
}

fn build_tropo(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: TropoParams = ctx.parse()?;
    p.profile.validate().map_err(|e| ctx.invalid(e))?;
    p.pass.check(ctx)?;
    boxed(Tropo { p, c: ctx.c })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TecParams {
    /// CSV with `t_unix_s,vtec_tecu` rows; relative to the scenario file
    tec_csv: PathBuf,
    /// Unix time of grid epoch zero (s)
    #[serde(default)]
    t_offset: f64,
    f: f64,
    pass: PassParams,
    #[serde(default = "shell")]
    shell_height: f64,
}

fn shell() -> f64 {
    SHELL_HEIGHT
}

struct Tec {
    series: TecSeries,
    p: TecParams,
    c: f64,
}

impl Family for Tec {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["elevation_rad", "slant_tec_rate"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let p = &self.p;
        let (el, rate) = p.pass.elevation(t)?;
        let dtec = self.series.slant_tec_rate(t + p.t_offset, el, rate, p.pass.earth.radius, p.shell_height)?;
        let d = tec_doppler(dtec, p.f, self.c)?;
        Ok(shift_row(t, p.f, d, &[el, dtec]).warn_if(el < 0.0, "satellite below the horizon"))
    }
}

fn build_tec(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: TecParams = ctx.parse()?;
    p.pass.check(ctx)?;
    let path = ctx.base_dir.join(&p.tec_csv);
    let series = TecSeries::from_path(&path).map_err(|e| ctx.invalid(e))?;
    boxed(Tec { series, p, c: ctx.c })
}

// ------------------------------------------------------------- applications

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BistaticParams {
    geometry: SensingGeometry,
    speed: f64,
    #[serde(default = "reflect_a")]
    sensor: SensingScenario,
}

fn reflect_a() -> SensingScenario {
    SensingScenario::ReflectA
}

struct Bistatic {
    p: BistaticParams,
    c: f64,
}

impl Family for Bistatic {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["fd_reflect_a_hz", "fd_diffract_b_hz", "speed_recovered_mps", "theta_t_recovered_rad"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let g = &self.p.geometry;
        let fd = bistatic_doppler(g, self.p.speed, self.p.sensor, self.c)?;
        let fa = bistatic_doppler(g, self.p.speed, SensingScenario::ReflectA, self.c)?;
        let fb = bistatic_doppler(g, self.p.speed, SensingScenario::DiffractB, self.c)?;
        let (speed, theta, note) = match invert_target_velocity(fa, fb, g.alpha, g.beta, g.f, self.c) {
            Ok(v) => (v.speed, opt(v.theta_t), None),
            Err(e) => (f64::NAN, f64::NAN, Some(format!("velocity inversion unavailable: {e}"))),
        };
        let mut row = shift_row(t, g.f, fd, &[fa, fb, speed, theta]);
        row.warnings.extend(note);
        Ok(row)
    }
}

fn build_bistatic(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: BistaticParams = ctx.parse()?;
    p.geometry.validate().map_err(|e| ctx.invalid(e))?;
    boxed(Bistatic { p, c: ctx.c })
}

fn satnav_notes(scn: &SatNavScenario) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(IonoProfile::FlatLinear { vz: Some(_), .. }) = scn.iono {
        out.push("ionosphere vz is ignored by the budget; the profile is frozen at each emission".to_string());
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BudgetParams {
    scenario: SatNavScenario,
    /// Carrier (Hz); defaults to `f1`
    #[serde(default)]
    f: Option<f64>,
    /// Crest interval (s)
    tc: f64,
}

struct Budget {
    scn: SatNavScenario,
    f: f64,
    tc: f64,
}

const BUDGET_COLUMNS: [&str; 9] = [
    "kinematic_hz",
    "mean_velocity_hz",
    "i_g_hz",
    "i_s_hz",
    "i_t_hz",
    "i_i_hz",
    "sagnac_hz",
    "total_hz",
    "elevation_rad",
];

impl Family for Budget {
    fn columns(&self) -> Vec<&'static str> {
        cols(&BUDGET_COLUMNS)
    }
    fn row(&self, t: f64) -> Result<Row> {
        let b = satnav_doppler_budget(&self.scn, self.f, t, self.tc)?;
        let v = vec![
            t,
            self.f + b.total,
            b.total,
            b.kinematic,
            b.mean_velocity,
            b.i_g,
            b.i_s,
            b.i_t,
            b.i_i,
            b.sagnac,
            b.total,
            b.elevation,
        ];
        Ok(Row::new(v)
            .warn_if(b.low_elevation, "elevation below 3 degrees; tropospheric weighting is outside its validity range")
            .warn_if(b.elevation < 0.0, "satellite below the station horizon"))
    }
    fn notes(&self) -> Vec<String> {
        satnav_notes(&self.scn)
    }
    fn oracle(&self) -> Option<&dyn Oracle> {
        Some(self)
    }
}

impl Oracle for Budget {
    fn quantity(&self) -> &'static str {
        "crest_frequency_hz"
    }
    fn compare(&self, t: f64) -> Result<(f64, f64)> {
        // geometric term only: the crest oracle has no atmosphere
        let mut scn = self.scn.clone();
        scn.flags.ionosphere = false;
        scn.flags.troposphere = false;
        let b = satnav_doppler_budget(&scn, self.f, t, self.tc)?;
        let closed = 1.0 / (self.tc * (1.0 - b.kinematic / self.f));
        let reference = crest_frequency(&scn.satellite, &scn.station_track(), 1.0 / self.tc, t, scn.c)?;
        Ok((closed, reference))
    }
}

fn build_budget(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: BudgetParams = ctx.parse()?;
    let mut scn = p.scenario;
    scn.c = ctx.c;
    scn.validate().map_err(|e| ctx.invalid(e))?;
    let f = p.f.unwrap_or(scn.f1);
    if !(f > 0.0 && p.tc > 0.0) {
        return Err(ctx.invalid(DopplerError::Domain("f and tc must be positive".into())));
    }
    boxed(Budget { scn, f, tc: p.tc })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DualParams {
    scenario: SatNavScenario,
    tc: f64,
}

struct Dual {
    scn: SatNavScenario,
    tc: f64,
}

impl Family for Dual {
    fn columns(&self) -> Vec<&'static str> {
        vec![
            "t_s",
            "f_shift_f1_hz",
            "f_shift_f2_hz",
            "i_i_f1_hz",
            "i_i_f2_hz",
            "iono_combination_hz2",
            "combination_hz2",
        ]
    }
    fn row(&self, t: f64) -> Result<Row> {
        let (f1, f2) = (self.scn.f1, self.scn.f2);
        let b1 = satnav_doppler_budget(&self.scn, f1, t, self.tc)?;
        let b2 = satnav_doppler_budget(&self.scn, f2, t, self.tc)?;
        let iono = dual_frequency_combine(b1.i_i, b2.i_i, f1, f2)?;
        let all = dual_frequency_combine(b1.total, b2.total, f1, f2)?;
        Ok(Row::new(vec![t, b1.total, b2.total, b1.i_i, b2.i_i, iono, all])
            .warn_if(b1.low_elevation, "elevation below 3 degrees; tropospheric weighting is outside its validity range"))
    }
    fn notes(&self) -> Vec<String> {
        satnav_notes(&self.scn)
    }
}

fn build_dual(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let p: DualParams = ctx.parse()?;
    let mut scn = p.scenario;
    scn.c = ctx.c;
    scn.validate().map_err(|e| ctx.invalid(e))?;
    if !(p.tc > 0.0) {
        return Err(ctx.invalid(DopplerError::Domain("tc must be positive".into())));
    }
    boxed(Dual { scn, tc: p.tc })
}

// ----------------------------------------------------------------- acoustic

struct Acoustic {
    scn: AcousticScenario,
}

impl Family for Acoustic {
    fn columns(&self) -> Vec<&'static str> {
        cols(&["mach", "cone_half_angle_rad", "medium_f_hz", "wavelength_m"])
    }
    fn row(&self, t: f64) -> Result<Row> {
        let s = &self.scn;
        let vw = s.wave_speed();
        let info = mach_info(s.v_s, vw.max(f64::MIN_POSITIVE))?;
        let (fw, lw) = medium_wave_params(s.v_s, vw, s.f).unwrap_or((f64::NAN, f64::NAN));
        let extra = [info.mach, opt(info.cone_half_angle), fw, lw];
        match acoustic_shift(s) {
            Ok(f_obs) => Ok(shift_row(t, s.f, f_obs - s.f, &extra)),
            Err(DopplerError::Supersonic { mach }) => {
                let mut row = Row::new(vec![t, f64::NAN, f64::NAN]);
                row.values.extend_from_slice(&extra);
                Ok(row.warn_if(true, format!("supersonic source (M = {mach}); no steady received frequency")))
            }
            Err(e) => Err(e),
        }
    }
}

fn build_acoustic(ctx: &BuildCtx) -> CliResult<Box<dyn Family>> {
    let scn: AcousticScenario = ctx.parse()?;
    scn.validate().map_err(|e| ctx.invalid(e))?;
    boxed(Acoustic { scn })
}

// ----------------------------------------------------------------- registry

/// Every scenario kind, sorted by tag.
pub static REGISTRY: &[Kind] = &[
    Kind {
        tag: "accel-frame",
        module: "gravity_accel",
        params: "a, x, f, [period]",
        about: "source and observer at rest in a uniformly accelerated frame",
        build: build_accel_frame,
    },
    Kind {
        tag: "acoustic-shift",
        module: "acoustic",
        params: "v, f, [v_m, v_s, v_o]",
        about: "sound in a moving medium with Mach-cone classification",
        build: build_acoustic,
    },
    Kind {
        tag: "bistatic-sensing",
        module: "applications",
        params: "geometry{alpha, beta, theta_t, f}, speed, [sensor]",
        about: "bistatic and monostatic shifts with velocity recovery",
        build: build_bistatic,
    },
    Kind {
        tag: "circular-doppler",
        module: "classical",
        params: "radius, r0, omega, f, mode, [solver, wave_speed]",
        about: "one node on a circle, the other fixed in its plane",
        build: build_circular,
    },
    Kind {
        tag: "circular-relativistic",
        module: "relativistic",
        params: "radius, r0, omega, f, mode, [medium]",
        about: "circular motion with the rotating clock dilated",
        build: build_rel_circular,
    },
    Kind {
        tag: "close-zone",
        module: "classical",
        params: "r1, v, theta, f, mover, [wave_speed]",
        about: "spherical-wave period for nearby source and observer",
        build: build_close_zone,
    },
    Kind {
        tag: "dual-frequency",
        module: "applications",
        params: "scenario, tc",
        about: "satellite budgets on both carriers and their combination",
        build: build_dual,
    },
    Kind {
        tag: "elevation-rate",
        module: "atmosphere",
        params: "rs, omega, [h_t, earth, branch]",
        about: "elevation angle and its rate over an overhead pass",
        build: build_elevation,
    },
    Kind {
        tag: "far-field",
        module: "classical",
        params: "f, [v_src, theta_src, v_obs, theta_obs, wave_speed]",
        about: "plane-wave shift for uniform motion",
        build: build_far_field,
    },
    Kind {
        tag: "flat-ionosphere",
        module: "atmosphere",
        params: "theta_e, f, variant",
        about: "shift from a drifting linear ionospheric layer",
        build: build_flat_iono,
    },
    Kind {
        tag: "general-motion",
        module: "classical",
        params: "mover, f, [source{r0, v0, a}, observer{r0, v0, a}, wave_speed]",
        about: "accelerated motion along one line, period solved implicitly",
        build: build_general,
    },
    Kind {
        tag: "gravitational-shift",
        module: "gravity_accel",
        params: "source, observer, f",
        about: "potential-difference shift and accumulated clock offset",
        build: build_gravity,
    },
    Kind {
        tag: "ionosphere-index",
        module: "atmosphere",
        params: "ne, f, [order, gyro_frequency, collision_frequency, field_angle]",
        about: "simplified and magneto-ionic refractive indices",
        build: build_iono_index,
    },
    Kind {
        tag: "linear-accel",
        module: "classical",
        params: "r0, f, [v0, a, wave_speed]",
        about: "source accelerating along a line through the observer",
        build: build_linear_accel,
    },
    Kind {
        tag: "phase-path",
        module: "atmosphere",
        params: "path1, path2, f",
        about: "shift from two sampled phase paths",
        build: build_phase_path,
    },
    Kind {
        tag: "rel-accel",
        module: "relativistic",
        params: "a, f, span, [v0, medium]",
        about: "source under constant proper acceleration, averaged per period",
        build: build_rel_accel,
    },
    Kind {
        tag: "relativistic-medium",
        module: "relativistic",
        params: "f, [source{v_line, speed}, observer{v_line, speed}, medium]",
        about: "relativistic shift in a refracting, possibly flowing medium",
        build: build_rel_medium,
    },
    Kind {
        tag: "rotor-absorber",
        module: "gravity_accel",
        params: "radius, omega, f, [k, a_max]",
        about: "energy and dilation shifts of an absorber on a rotor",
        build: build_rotor,
    },
    Kind {
        tag: "satnav-budget",
        module: "applications",
        params: "scenario, tc, [f]",
        about: "satellite-to-station Doppler budget by term",
        build: build_budget,
    },
    Kind {
        tag: "schwarzschild",
        module: "gravity_accel",
        params: "r1, r2, body, f, [phi0]",
        about: "static clocks at two radii of a spherical mass",
        build: build_schwarzschild,
    },
    Kind {
        tag: "tec-doppler",
        module: "atmosphere",
        params: "tec_csv, f, pass, [t_offset, shell_height]",
        about: "ionospheric shift from a measured vertical TEC series",
        build: build_tec,
    },
    Kind {
        tag: "troposphere",
        module: "atmosphere",
        params: "profile, f, pass, [method]",
        about: "tropospheric shift over an overhead pass",
        build: build_tropo,
    },
    Kind {
        tag: "uniform-motion",
        module: "classical",
        params: "source, observer, f, [wave_speed]",
        about: "static or uniformly moving nodes, period from two crest events",
        build: build_uniform,
    },
];

pub fn lookup(tag: &str) -> Option<&'static Kind> {
    REGISTRY.iter().find(|k| k.tag == tag)
}

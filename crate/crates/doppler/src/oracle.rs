//! Brute-force crest tracking.
//!
//! Emits discrete wave crests from a moving source and solves for each
//! arrival time at a moving observer. Observed periods are the differences
//! of successive arrival times, so no Doppler formula is used anywhere here.

use crate::core::{Motion, Vec3};
use crate::error::{domain, numeric, Result};
use crate::numeric::{adaptive_simpson, fixed_gauss, step_settled};

/// A refractive-index field `n(p, t) = 1 + excess(p, t)`.
pub trait RefractiveField: Sync {
    fn excess(&self, p: Vec3, t: f64) -> f64;

    /// Fractions in `(0, 1)` along `a -> b` where the field has kinks or
    /// boundaries; quadrature panels are split there.
    fn breakpoints(&self, _a: Vec3, _b: Vec3) -> Vec<f64> {
        Vec::new()
    }
}

/// Speed as a function of coordinate time, for clock-rate corrections.
pub type SpeedFn<'a> = &'a (dyn Fn(f64) -> f64 + Sync);

#[derive(Clone, Copy)]
pub struct CrestConfig<'a> {
    /// Source frequency in its own clock (Hz)
    pub frequency: f64,
    /// Number of crests to emit
    pub count: usize,
    /// Emission time of the first crest (s)
    pub t0: f64,
    pub wave_speed: f64,
    /// Optional medium; the excess phase path is added to the straight-line distance.
    pub medium: Option<&'a dyn RefractiveField>,
    /// Source speed; when set the source ticks in proper time.
    pub source_speed: Option<SpeedFn<'a>>,
    /// Observer speed; when set the periods are reported in observer proper time.
    pub observer_speed: Option<SpeedFn<'a>>,
    /// Light speed for the clock corrections (m/s)
    pub light_speed: f64,
}

impl<'a> CrestConfig<'a> {
    pub fn new(frequency: f64, count: usize, t0: f64, wave_speed: f64) -> Self {
        Self {
            frequency,
            count,
            t0,
            wave_speed,
            medium: None,
            source_speed: None,
            observer_speed: None,
            light_speed: crate::core::C,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrestRecord {
    pub index: usize,
    pub t_emit: f64,
    pub t_arrive: f64,
    /// Straight-line emission-to-reception distance (m)
    pub path_length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub crests: Vec<CrestRecord>,
    /// Observed periods between successive crests (s); negative when a
    /// crest overtakes the one emitted before it
    pub periods: Vec<f64>,
}

impl OracleResult {
    /// True when every crest arrives after its predecessor.
    pub fn in_order(&self) -> bool {
        self.periods.iter().all(|p| *p > 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyEstimate {
    /// Midpoint of the two arrivals (s)
    pub t_mid: f64,
    pub frequency: f64,
}

const PANELS: usize = 200;

fn path_excess(medium: &dyn RefractiveField, a: Vec3, b: Vec3, t: f64) -> f64 {
    let len = (b - a).norm();
    if len == 0.0 {
        return 0.0;
    }
    let mut cuts = vec![0.0];
    let mut bp = medium.breakpoints(a, b);
    bp.retain(|s| *s > 0.0 && *s < 1.0);
    bp.sort_by(|x, y| x.total_cmp(y));
    cuts.extend(bp);
    cuts.push(1.0);
    let dir = b - a;
    cuts.windows(2)
        .map(|w| fixed_gauss(|s| medium.excess(a + dir * s, t), w[0], w[1], PANELS) * len)
        .sum()
}

/// Delay `tau` and path length for a crest leaving `src_pos` at `t_emit`.
fn arrival(src_pos: Vec3, obs: &dyn Motion, t_emit: f64, cfg: &CrestConfig) -> Result<(f64, f64)> {
    let c = cfg.wave_speed;
    let mut tau = (obs.position(t_emit) - src_pos).norm() / c;
    let mut prev = f64::INFINITY;
    for _ in 0..200 {
        let p = obs.position(t_emit + tau);
        let d = p - src_pos;
        let dist = d.norm();
        let extra = cfg.medium.map_or(0.0, |m| path_excess(m, src_pos, p, t_emit));
        let vo = obs.velocity(t_emit + tau);
        let recession = if dist > 0.0 { d.dot(vo) / dist } else { 0.0 };
        if recession >= c {
            return domain("observer outruns the wave");
        }
        let step = (c * tau - dist - extra) / (c - recession);
        tau -= step;
        if step_settled(step, &mut prev, tau.abs(), 4.0 * f64::EPSILON) {
            let p = obs.position(t_emit + tau);
            return Ok((tau, (p - src_pos).norm()));
        }
    }
    numeric("crest arrival did not converge")
}

fn proper_rate(speed: f64, c: f64) -> f64 {
    let b = speed / c;
    (1.0 - b * b).sqrt()
}

/// Coordinate time after `t` over which the source clock advances by `period`.
fn emission_step(t: f64, period: f64, speed: SpeedFn, c: f64) -> Result<f64> {
    let mut dt = period / proper_rate(speed(t), c);
    let mut prev = f64::INFINITY;
    for _ in 0..50 {
        let elapsed = adaptive_simpson(|s| proper_rate(speed(s), c), t, t + dt, 1e-14)?;
        let step = (elapsed - period) / proper_rate(speed(t + dt), c);
        dt -= step;
        if step_settled(step, &mut prev, dt, 4.0 * f64::EPSILON) {
            return Ok(dt);
        }
    }
    numeric("proper-time emission schedule did not converge")
}

/// Emits `cfg.count` crests and records their arrivals.
///
/// Periods are formed as emission spacing plus the change in delay, which
/// keeps them accurate when the epochs are large compared with the period.
pub fn simulate_crests(src: &dyn Motion, obs: &dyn Motion, cfg: &CrestConfig) -> Result<OracleResult> {
    if !(cfg.frequency > 0.0 && cfg.wave_speed > 0.0) {
        return domain("frequency and wave speed must be positive");
    }
    if cfg.count < 2 {
        return domain("at least two crests are needed");
    }
    let period = 1.0 / cfg.frequency;
    let mut crests = Vec::with_capacity(cfg.count);
    let mut spacing = Vec::with_capacity(cfg.count);
    let mut delays = Vec::with_capacity(cfg.count);
    let mut t_emit = cfg.t0;
    for index in 0..cfg.count {
        if index > 0 {
            let dt = match cfg.source_speed {
                Some(sp) => emission_step(t_emit, period, sp, cfg.light_speed)?,
                None => period,
            };
            t_emit = match cfg.source_speed {
                Some(_) => t_emit + dt,
                None => cfg.t0 + index as f64 * period,
            };
            spacing.push(dt);
        }
        let (tau, path_length) = arrival(src.position(t_emit), obs, t_emit, cfg)
            .map_err(|e| crate::error::DopplerError::Numeric(format!("crest {index}: {e}")))?;
        delays.push(tau);
        crests.push(CrestRecord { index, t_emit, t_arrive: t_emit + tau, path_length });
    }
    let mut periods = Vec::with_capacity(cfg.count - 1);
    for k in 0..cfg.count - 1 {
        let p = spacing[k] + (delays[k + 1] - delays[k]);
        let p = match cfg.observer_speed {
            Some(sp) => {
                let t1 = crests[k].t_arrive;
                adaptive_simpson(|s| proper_rate(sp(s), cfg.light_speed), t1, t1 + p, 1e-14)?
            }
            None => p,
        };
        periods.push(p);
    }
    Ok(OracleResult { crests, periods })
}

/// Frequency from each pair of successive arrivals.
pub fn estimate_frequency(result: &OracleResult) -> Vec<FrequencyEstimate> {
    result
        .crests
        .windows(2)
        .zip(&result.periods)
        .map(|(w, p)| FrequencyEstimate { t_mid: 0.5 * (w[0].t_arrive + w[1].t_arrive), frequency: 1.0 / p })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::Trajectory;

    #[test]
    fn static_pair_keeps_period() {
        let src = Trajectory::Static { position: Vec3::ZERO };
        let obs = Trajectory::Static { position: Vec3::new(1000.0, 0.0, 0.0) };
        let r = simulate_crests(&src, &obs, &CrestConfig::new(10.0, 5, 0.0, 300.0)).unwrap();
        for p in &r.periods {
            assert!((p - 0.1).abs() < 1e-15);
        }
    }

    #[test]
    fn receding_observer_matches_closed_form() {
        let src = Trajectory::Static { position: Vec3::ZERO };
        let obs = Trajectory::Uniform { position: Vec3::new(30.0, 0.0, 0.0), velocity: Vec3::new(5.0, 0.0, 0.0) };
        let r = simulate_crests(&src, &obs, &CrestConfig::new(1.0, 3, 0.0, 10.0)).unwrap();
        assert_eq!(r.crests[0].t_arrive, 6.0);
        assert!((r.periods[0] - 2.0).abs() < 1e-14);
    }

    struct Slab;
    impl RefractiveField for Slab {
        fn excess(&self, p: Vec3, _t: f64) -> f64 {
            if p.x > 10.0 && p.x < 20.0 {
                0.5
            } else {
                0.0
            }
        }
        fn breakpoints(&self, a: Vec3, b: Vec3) -> Vec<f64> {
            vec![(10.0 - a.x) / (b.x - a.x), (20.0 - a.x) / (b.x - a.x)]
        }
    }

    #[test]
    fn medium_delays_arrival() {
        let src = Trajectory::Static { position: Vec3::ZERO };
        let obs = Trajectory::Static { position: Vec3::new(30.0, 0.0, 0.0) };
        let mut cfg = CrestConfig::new(1.0, 2, 0.0, 10.0);
        cfg.medium = Some(&Slab);
        let r = simulate_crests(&src, &obs, &cfg).unwrap();
        assert!((r.crests[0].t_arrive - 3.5).abs() < 1e-12);
    }

    #[test]
    fn source_clock_slows_emission() {
        let src = Trajectory::Static { position: Vec3::ZERO };
        let obs = Trajectory::Static { position: Vec3::new(30.0, 0.0, 0.0) };
        let speed = |_t: f64| 0.6;
        let mut cfg = CrestConfig::new(1.0, 2, 0.0, 10.0);
        cfg.light_speed = 1.0;
        cfg.source_speed = Some(&speed);
        let r = simulate_crests(&src, &obs, &cfg).unwrap();
        assert!((r.periods[0] - 1.25).abs() < 1e-12);
    }

    #[test]
    fn supersonic_source_reverses_arrivals() {
        let src = Trajectory::Uniform { position: Vec3::new(-100.0, 0.0, 0.0), velocity: Vec3::new(20.0, 0.0, 0.0) };
        let obs = Trajectory::Static { position: Vec3::ZERO };
        let r = simulate_crests(&src, &obs, &CrestConfig::new(1.0, 4, 0.0, 10.0)).unwrap();
        assert!(!r.in_order());
        assert!(r.periods.iter().all(|p| (p + 1.0).abs() < 1e-12));
    }
}

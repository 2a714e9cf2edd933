use doppler::classical::{
    circular_doppler, close_zone_period, far_field_shift, general_motion_frequency, linear_accel_doppler, AccelBranch,
    AcceleratedRange, CircularMode, CloseZoneConfig, GeneralMotion, Mover, ObserverSolver, Range,
};
use doppler::core::{Trajectory, Vec3, C};
use doppler::oracle::{simulate_crests, CrestConfig};
use doppler::relativistic::longitudinal_shift;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn oracle_freq(src: &Trajectory, obs: &Trajectory, f: f64, t0: f64, c: f64) -> f64 {
    let r = simulate_crests(src, obs, &CrestConfig::new(f, 2, t0, c)).unwrap();
    1.0 / r.periods[0]
}

fn mean_period(r: &doppler::oracle::OracleResult) -> f64 {
    let (a, b) = (r.crests[0], r.crests[r.crests.len() - 1]);
    (b.t_arrive - a.t_arrive) / (r.crests.len() - 1) as f64
}

fn unit(theta: f64, phi: f64) -> Vec3 {
    Vec3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos())
}

fn angle(a: Vec3, b: Vec3) -> f64 {
    (a.dot(b) / (a.norm() * b.norm())).clamp(-1.0, 1.0).acos()
}

#[test]
fn close_zone_observer_example() {
    let (f, r1, v) = (1e9, 1.0, 300.0);
    let th = std::f64::consts::FRAC_PI_2;
    let cfg = CloseZoneConfig { r1, v, theta: th, period: 1.0 / f, wave_speed: C, mover: Mover::Observer };
    let closed = close_zone_period(&cfg).unwrap().sample.freq_obs;
    let vel = Vec3::new(th.cos(), th.sin(), 0.0) * v;
    let obs = Trajectory::Uniform { position: Vec3::new(r1, 0.0, 0.0) - vel * (r1 / C), velocity: vel };
    let src = Trajectory::Static { position: Vec3::ZERO };
    assert!(rel(closed, oracle_freq(&src, &obs, f, 0.0, C)) < 1e-12);
}

#[test]
fn linear_accel_pass_through() {
    let (r0, v0, a, f) = (3.0, 1000.0, 0.0, 100.0);
    let t = 2.995e-3;
    let res = linear_accel_doppler(r0, v0, a, t, 1.0 / f, f, C).unwrap();
    assert_eq!(res.branch, AccelBranch::PassThrough);
    let src = Trajectory::LinearAccel { r0, v0, a, axis: Vec3::X };
    let obs = Trajectory::Static { position: Vec3::ZERO };
    assert!(rel(res.sample.freq_obs, oracle_freq(&src, &obs, f, t, C)) < 1e-12);
}

#[test]
fn rocket_recession_mean_shift() {
    let f = 10e9;
    let src = Trajectory::Static { position: Vec3::ZERO };
    let obs = Trajectory::Uniform { position: Vec3::new(1.0, 0.0, 0.0), velocity: Vec3::new(12e3, 0.0, 0.0) };
    let r = simulate_crests(&src, &obs, &CrestConfig::new(f, 1000, 0.0, 3e8)).unwrap();
    let mean = mean_period(&r);
    let shift = 1.0 / mean - f;
    assert!(rel(shift, -400_000.0) < 1e-10, "{shift}");
    let src = Trajectory::Uniform { position: Vec3::new(-1.0, 0.0, 0.0), velocity: Vec3::new(-12e3, 0.0, 0.0) };
    let obs = Trajectory::Static { position: Vec3::ZERO };
    let r = simulate_crests(&src, &obs, &CrestConfig::new(f, 1000, 0.0, 3e8)).unwrap();
    let mean = mean_period(&r);
    let shift = 1.0 / mean - f;
    assert!(rel(shift, -399_984.000_639_974_4) < 1e-10, "{shift}");
}

#[test]
fn dilated_oracle_matches_longitudinal() {
    for v in [-0.6 * C, -1e5, 3e4, 0.3 * C, 0.9 * C] {
        let f = 1e3;
        let src = Trajectory::Uniform { position: Vec3::new(-1e6, 0.0, 0.0), velocity: Vec3::new(-v, 0.0, 0.0) };
        let obs = Trajectory::Static { position: Vec3::ZERO };
        let speed = move |_t: f64| v.abs();
        let mut cfg = CrestConfig::new(f, 2, 0.0, C);
        cfg.source_speed = Some(&speed);
        let r = simulate_crests(&src, &obs, &cfg).unwrap();
        assert!(rel(1.0 / r.periods[0], longitudinal_shift(v, f, C).unwrap()) < 1e-9, "v = {v}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn far_field_uniform(
        r in 1e6f64..1e8, dir in (0.0f64..3.1, 0.0f64..6.2),
        vs in 0.0f64..1e-3, vs_dir in (0.0f64..3.1, 0.0f64..6.2),
        vo in 0.0f64..1e-3, vo_dir in (0.0f64..3.1, 0.0f64..6.2),
        ratio in -5.0f64..-4.0,
    ) {
        let c = C;
        let p_src = unit(dir.0, dir.1) * r;
        let v_src = unit(vs_dir.0, vs_dir.1) * (vs * c);
        let v_obs = unit(vo_dir.0, vo_dir.1) * (vo * c);
        let period = r / c * 10f64.powf(ratio);
        let src = Trajectory::Uniform { position: p_src, velocity: v_src };
        let obs0 = Trajectory::Uniform { position: Vec3::ZERO, velocity: v_obs };
        let lt = doppler::core::solve_light_time(&src, &obs0, 0.0, c).unwrap();
        let p_obs = v_obs * lt.t_arrive;
        let u = p_obs - p_src;
        let ff = far_field_shift(v_src.norm(), angle(v_src, u), v_obs.norm(), angle(v_obs, u), 1.0 / period, c).unwrap();
        let o = oracle_freq(&src, &obs0, 1.0 / period, 0.0, c);
        prop_assert!(rel(ff.freq_obs, o) < 1e-9);
    }

    #[test]
    fn close_zone_source(r1 in 1.0f64..1e4, v in 1.0f64..3e5, th in 0.0f64..3.1, f in 1e3f64..1e9) {
        let cfg = CloseZoneConfig { r1, v, theta: th, period: 1.0 / f, wave_speed: C, mover: Mover::Source };
        let closed = close_zone_period(&cfg).unwrap().sample.freq_obs;
        let src = Trajectory::Uniform { position: Vec3::ZERO, velocity: Vec3::new(th.cos(), th.sin(), 0.0) * v };
        let obs = Trajectory::Static { position: Vec3::new(r1, 0.0, 0.0) };
        prop_assert!(rel(closed, oracle_freq(&src, &obs, f, 0.0, C)) < 1e-9);
    }

    #[test]
    fn close_zone_observer(r1 in 1.0f64..1e4, v in 1.0f64..3e5, th in 0.0f64..3.1, f in 1e3f64..1e9) {
        let cfg = CloseZoneConfig { r1, v, theta: th, period: 1.0 / f, wave_speed: C, mover: Mover::Observer };
        let closed = close_zone_period(&cfg).unwrap().sample.freq_obs;
        let vel = Vec3::new(th.cos(), th.sin(), 0.0) * v;
        let obs = Trajectory::Uniform { position: Vec3::new(r1, 0.0, 0.0) - vel * (r1 / C), velocity: vel };
        let src = Trajectory::Static { position: Vec3::ZERO };
        prop_assert!(rel(closed, oracle_freq(&src, &obs, f, 0.0, C)) < 1e-9);
    }

    #[test]
    fn linear_accel_source(r0 in 1e3f64..1e7, v0 in -3e5f64..3e5, a in -1e4f64..1e4, t in 0.0f64..10.0, f in 1e2f64..1e6) {
        let x = -r0 + t * (v0 + 0.5 * a * t);
        prop_assume!(x.abs() > 1.0 && (v0 + a * t).abs() < 3e5);
        let res = linear_accel_doppler(r0, v0, a, t, 1.0 / f, f, C).unwrap();
        let src = Trajectory::LinearAccel { r0, v0, a, axis: Vec3::X };
        let obs = Trajectory::Static { position: Vec3::ZERO };
        prop_assert!(rel(res.sample.freq_obs, oracle_freq(&src, &obs, f, t, C)) < 1e-9);
    }

    #[test]
    fn general_observer_moving(r0 in 1e4f64..1e7, v0 in -1e5f64..1e5, a in -1e3f64..1e3, t in 1.0f64..10.0, f in 1e2f64..1e6) {
        let rg = AcceleratedRange { r0, v0, a };
        prop_assume!(rg.range(t) > 1e3);
        let s = general_motion_frequency(GeneralMotion::ObserverMoving(&rg), t, 1.0 / f, C).unwrap();
        let src = Trajectory::Static { position: Vec3::ZERO };
        let obs = Trajectory::LinearAccel { r0: -r0, v0, a, axis: Vec3::X };
        let t_emit = t - rg.range(t) / C;
        prop_assert!(rel(s.freq_obs, oracle_freq(&src, &obs, f, t_emit, C)) < 1e-9);
    }

    #[test]
    fn general_both_moving(
        rs0 in 1e4f64..1e7, vs in -1e5f64..1e5, as_ in -1e3f64..1e3,
        ro0 in 1e4f64..1e7, vo in -1e5f64..1e5, ao in -1e3f64..1e3,
        t in 0.0f64..5.0, f in 1e2f64..1e6,
    ) {
        let src_r = AcceleratedRange { r0: rs0, v0: vs, a: as_ };
        let obs_r = AcceleratedRange { r0: ro0, v0: vo, a: ao };
        prop_assume!(src_r.range(t) > 1e3 && obs_r.range(t + 0.1) > 1e3 && obs_r.range(t) > 1e3);
        let m = GeneralMotion::Both { source: &src_r, observer: &obs_r };
        let s = general_motion_frequency(m, t, 1.0 / f, C).unwrap();
        let src = Trajectory::LinearAccel { r0: rs0, v0: -vs, a: -as_, axis: Vec3::X };
        let obs = Trajectory::LinearAccel { r0: -ro0, v0: vo, a: ao, axis: Vec3::X };
        prop_assert!(rel(s.freq_obs, oracle_freq(&src, &obs, f, t, C)) < 1e-9);
    }

    #[test]
    fn circular_source(radius in 1.0f64..1e6, k in 0.01f64..100.0, speed in 1.0f64..3e5, t in 0.0f64..100.0, f in 1e2f64..1e7) {
        let r0 = radius * k;
        let omega = speed / radius;
        let s = circular_doppler(radius, r0, omega, t, 1.0 / f, C, CircularMode::SourceOnCircle, ObserverSolver::Exact).unwrap();
        let src = Trajectory::circle(Vec3::ZERO, radius, omega, 0.0);
        let obs = Trajectory::Static { position: Vec3::new(-r0, 0.0, 0.0) };
        prop_assert!(rel(s.freq_obs, oracle_freq(&src, &obs, f, t, C)) < 1e-9);
    }

    #[test]
    fn circular_observer(radius in 1.0f64..1e6, k in 0.01f64..100.0, speed in 1.0f64..3e5, t in 0.0f64..100.0, f in 1e2f64..1e7) {
        let r0 = radius * k;
        let omega = speed / radius;
        let s = circular_doppler(radius, r0, omega, t, 1.0 / f, C, CircularMode::ObserverOnCircle, ObserverSolver::Exact).unwrap();
        let src = Trajectory::Static { position: Vec3::new(-r0, 0.0, 0.0) };
        let obs = Trajectory::circle(Vec3::ZERO, radius, omega, 0.0);
        prop_assert!(rel(s.freq_obs, oracle_freq(&src, &obs, f, t, C)) < 1e-9);
    }
}

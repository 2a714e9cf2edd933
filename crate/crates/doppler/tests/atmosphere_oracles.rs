use doppler::atmosphere::{
    elevation_rate, flat_iono_doppler, phase_path_doppler, simplified_iono_n, tropo_doppler, tropo_ftheta,
    ElevationRateBranch, FlatIonoVariant, FthetaMethod, IonoOrder, PhasePath, TropoModel, TropoProfile, KAPPA,
};
use doppler::core::{elevation_angle, EarthModel, Vec3, C};

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Up-leg of the parabolic ray through `Ne = alpha (z - h0)`, from the
/// launch point to the apex, sampled densely near the apex.
fn layer_ray(h0: f64, theta: f64, alpha: f64, f: f64, t: f64) -> PhasePath {
    let a = alpha * KAPPA / (f * f);
    let (s, c) = theta.sin_cos();
    let mut pts = vec![(Vec3::ZERO, 1.0), (Vec3::new(h0 * c / s, h0, 0.0), 1.0)];
    let m = 20_000;
    for k in 1..=m {
        // w = sqrt(sin^2 - a u) runs from sin down to 0
        let w = s * (1.0 - k as f64 / m as f64);
        let u = (s * s - w * w) / a;
        let x = h0 * c / s + 2.0 / a * c * (s - w);
        let ne = alpha * u;
        let n = simplified_iono_n(ne, f, IonoOrder::Sqrt).unwrap_or(0.0);
        pts.push((Vec3::new(x, h0 + u, 0.0), n));
    }
    PhasePath::new(pts, t).unwrap()
}

/// Launch elevation that keeps the apex above the same ground point.
fn launch_angle(h0: f64, apex_x: f64, alpha: f64, f: f64) -> f64 {
    let a = alpha * KAPPA / (f * f);
    bisect(|th| h0 / th.tan() + 2.0 / a * th.cos() * th.sin() - apex_x, 1e-3, std::f64::consts::FRAC_PI_2)
}

fn flat_layer_oracle(theta: f64, vz: f64, f: f64) -> f64 {
    let (alpha, h0, dt) = (1e11, 100e3, 0.5);
    let a = alpha * KAPPA / (f * f);
    let apex_x = h0 / theta.tan() + 2.0 / a * theta.cos() * theta.sin();
    let ray = |t: f64| {
        let h = h0 + vz * t;
        layer_ray(h, launch_angle(h, apex_x, alpha, f), alpha, f, t)
    };
    phase_path_doppler(&ray(-dt), &ray(dt), f, C).unwrap().shift_hz
}

#[test]
fn flat_layer_phase_path_follows_fermat() {
    let (f, vz) = (1.5e9, 10.0);
    for deg in [30.0f64, 60.0, 85.0] {
        let th = deg.to_radians();
        let oracle = flat_layer_oracle(th, vz, f);
        let fermat = -f * vz / C * th.sin();
        assert!((oracle / fermat - 1.0).abs() < 1e-4, "{deg}: {oracle} vs {fermat}");
    }
}

#[test]
fn flat_layer_agrees_near_zenith() {
    let (f, vz) = (1.5e9, 10.0);
    let zenith = flat_iono_doppler(std::f64::consts::FRAC_PI_2, f, FlatIonoVariant::H0Varying { vz }, C).unwrap();
    assert!((zenith + f * vz / C).abs() < 1e-12);
    let th = 89.9f64.to_radians();
    let closed = flat_iono_doppler(th, f, FlatIonoVariant::H0Varying { vz }, C).unwrap();
    let oracle = flat_layer_oracle(th, vz, f);
    assert!((closed / oracle - 1.0).abs() < 1e-4, "{closed} vs {oracle}");
    // off zenith the two part ways
    let th = 30f64.to_radians();
    let closed = flat_iono_doppler(th, f, FlatIonoVariant::H0Varying { vz }, C).unwrap();
    assert!((closed / flat_layer_oracle(th, vz, f) - 1.0).abs() > 0.5);
}

#[test]
fn phase_path_reversal_and_split() {
    let ray = layer_ray(100e3, 0.7, 1e11, 1.5e9, 0.0);
    let mut rev = ray.clone();
    rev.samples.reverse();
    assert!((ray.length() - rev.length()).abs() <= 1e-9 * ray.length());
    let mid = ray.samples.len() / 2;
    let a = PhasePath::new(ray.samples[..=mid].to_vec(), 0.0).unwrap();
    let b = PhasePath::new(ray.samples[mid..].to_vec(), 0.0).unwrap();
    assert!((a.length() + b.length() - ray.length()).abs() <= 1e-9 * ray.length());
}

fn gps() -> (EarthModel, f64, f64) {
    let omega = 2.0 * std::f64::consts::PI / 43_200.0;
    (EarthModel::default(), 26_560e3, omega)
}

/// Straight slant path from the station to the satellite at epoch `t`.
fn slant_path(profile: &TropoProfile, t: f64, earth: &EarthModel, rs: f64, omega: f64) -> PhasePath {
    let r = earth.radius;
    let st = Vec3::new(0.0, r, 0.0);
    let sat = Vec3::new(rs * (omega * t).sin(), rs * (omega * t).cos(), 0.0);
    let u = (sat - st).unit();
    let top = 40e3;
    let s_top = bisect(|s| (st + u * s).norm() - r - top, 0.0, 1e7);
    let m = 20_000;
    let mut pts: Vec<(Vec3, f64)> = (0..=m)
        .map(|k| {
            let p = st + u * (s_top * k as f64 / m as f64);
            let h = p.norm() - r;
            (p, 1.0 + 1e-6 * profile.refractivity(h).unwrap())
        })
        .collect();
    pts.push((sat, 1.0));
    PhasePath::new(pts, t).unwrap()
}

#[test]
fn tropo_pipeline_matches_slant_phase_paths() {
    let (earth, rs, omega) = gps();
    let profile = TropoProfile { model: TropoModel::Quartic { n_td: 315.0, h0d: 40e3, n_tw: 50.0, h0w: 12e3 }, h_t: 0.0 };
    let f = 1.57542e9;
    let th = 30f64.to_radians();
    let t = bisect(|t| elevation_angle(t, &earth, rs, 0.0, omega).unwrap() - th, 0.0, 8000.0);
    let rate = elevation_rate(t, &earth, rs, 0.0, omega, ElevationRateBranch::Approximate).unwrap();
    let ft = tropo_ftheta(&profile, th, &earth, FthetaMethod::ClosedForm).unwrap();
    let pipeline = tropo_doppler(f, ft.value, rate, C).unwrap();

    let dt = 1.0;
    let (p1, p2) = (slant_path(&profile, t - dt, &earth, rs, omega), slant_path(&profile, t + dt, &earth, rs, omega));
    let total = phase_path_doppler(&p1, &p2, f, C).unwrap().shift_hz;
    let geometric = -f / C * ((p2.samples.last().unwrap().0 - p2.samples[0].0).norm()
        - (p1.samples.last().unwrap().0 - p1.samples[0].0).norm())
        / (2.0 * dt);
    let from_excess = -f / C * (p2.excess() - p1.excess()) / (2.0 * dt);
    assert!((total - geometric - from_excess).abs() < 1e-3 * from_excess.abs());
    assert!((pipeline / from_excess - 1.0).abs() < 0.02, "{pipeline} vs {from_excess}");
}

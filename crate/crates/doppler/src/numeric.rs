//! Quadrature, root finding and interpolation helpers.

use crate::error::{numeric, Result};

/// Adaptive Simpson quadrature of `f` on `[a, b]` to relative tolerance `rel_tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // coarse magnitude estimate so the tolerance is relative to the integral
    let n = 64;
    let h = (b - a) / n as f64;
    let mut scale = 0.0;
    for i in 0..=n {
        scale += f(a + i as f64 * h).abs();
    }
    scale *= h.abs();
    let tol = (rel_tol * scale).max(f64::MIN_POSITIVE);
    let v = simpson_rec(&f, a, b, fa, fm, fb, whole, tol, 50);
    if v.is_finite() {
        Ok(v)
    } else {
        numeric("quadrature produced a non-finite value")
    }
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Composite Simpson rule with a fixed number of panels (rounded up to even).
///
/// The node set depends only on the limits, so results vary smoothly with
/// parameters of `f`; useful when differencing two nearby integrals.
pub fn fixed_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = (panels.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Composite 5-point Gauss-Legendre rule on `panels` equal panels.
///
/// Never evaluates `f` at the interval ends, so integrands with jumps at
/// panel boundaries are handled cleanly.
pub fn fixed_gauss<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 5] = [
        -0.906_179_845_938_664_0,
        -0.538_469_310_105_683_1,
        0.0,
        0.538_469_310_105_683_1,
        0.906_179_845_938_664_0,
    ];
    const W: [f64; 5] = [
        0.236_926_885_056_189_09,
        0.478_628_670_499_366_47,
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_47,
        0.236_926_885_056_189_09,
    ];
    let n = panels.max(1);
    let h = (b - a) / n as f64;
    let mut s = 0.0;
    for i in 0..n {
        let mid = a + (i as f64 + 0.5) * h;
        for k in 0..5 {
            s += W[k] * f(mid + 0.5 * h * X[k]);
        }
    }
    0.5 * h * s
}

/// Convergence test for Newton updates: true once `|step| <= tol * scale`,
/// or once steps below `1e-9 * scale` stop shrinking (rounding floor).
pub fn step_settled(step: f64, prev: &mut f64, scale: f64, tol: f64) -> bool {
    let a = step.abs();
    let done = a <= tol * scale || (a >= *prev && a <= 1e-9 * scale);
    *prev = a;
    done
}

/// Safeguarded Newton iteration on a sign-changing bracket `[lo, hi]`.
///
/// `fdf` returns the function value and its derivative. Steps leaving the
/// bracket fall back to bisection.
pub fn newton_bisect<F: Fn(f64) -> (f64, f64)>(
    fdf: F,
    guess: f64,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = fdf(lo).0;
    let fhi = fdf(hi).0;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return numeric(format!("root not bracketed in [{lo}, {hi}]"));
    }
    let rising = fhi > 0.0;
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    for _ in 0..max_iter {
        let (fx, dfx) = fdf(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == rising {
            hi = x;
        } else {
            lo = x;
        }
        let mut next = x - fx / dfx;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= xtol || hi - lo <= xtol {
            return Ok(next);
        }
        x = next;
    }
    numeric(format!("Newton/bisection did not converge within {max_iter} iterations"))
}

/// Expands `[lo, hi]` geometrically about zero-free guesses until `f` changes sign.
pub fn widen_bracket<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, max_steps: usize) -> Result<(f64, f64)> {
    for _ in 0..max_steps {
        if f(lo).signum() != f(hi).signum() || f(lo) == 0.0 || f(hi) == 0.0 {
            return Ok((lo, hi));
        }
        lo *= 0.5;
        hi *= 2.0;
    }
    numeric("could not bracket the root")
}

/// Natural cubic spline through `(x_i, y_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(crate::DopplerError::Input("spline needs at least two matching samples".into()));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(crate::DopplerError::Input("spline abscissae must be strictly increasing".into()));
        }
        let mut m = vec![0.0; n];
        if n > 2 {
            // tridiagonal solve for interior second derivatives
            let mut c = vec![0.0; n];
            let mut d = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                let rhs = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
                let diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
                c[i] = h1 / diag;
                d[i] = (rhs - h0 * d[i - 1]) / diag;
            }
            for i in (1..n - 1).rev() {
                m[i] = d[i] - c[i] * m[i + 1];
            }
        }
        Ok(Self { x, y, m })
    }

    fn segment(&self, t: f64) -> usize {
        let n = self.x.len();
        match self.x.partition_point(|&xi| xi <= t) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        }
    }

    /// Value and first derivative at `t`; the end segments extend beyond the data.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        let i = self.segment(t);
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let v = a * self.y[i] + b * self.y[i + 1] + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let dv = (self.y[i + 1] - self.y[i]) / h - (3.0 * a * a - 1.0) * h * m0 / 6.0
            + (3.0 * b * b - 1.0) * h * m1 / 6.0;
        (v, dv)
    }
}

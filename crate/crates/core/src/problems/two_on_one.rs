//! Two-On-One on `[-3, 3]^2`:
//! `f1 = x1^4 + x2^4 - x1^2 + x2^2 - 10 x1 x2 + 20`, `f2 = x1^2 + x2^2`.
//!
//! Both objectives are invariant under `x -> -x`, so the Pareto set comes in
//! two point-symmetric halves. `f2` is the squared radius, so the Pareto set
//! is the curve of `f1`-minimizers on circles of radius `r`, for `r` from 0 up
//! to the radius of the global `f1` minimum. On a circle,
//! `f1 = r^4 (1 - sin^2(psi)/2) - r^2 (cos psi + 5 sin psi) + 20` with
//! `psi = 2 phi`, which is minimized numerically.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::rng::RngStream;

pub(super) const LOWER: f64 = -3.0;
pub(super) const UPPER: f64 = 3.0;

pub(super) fn evaluate(x: &[f64]) -> Vec<f64> {
    let (a, b) = (x[0], x[1]);
    let f1 = a.powi(4) + b.powi(4) - a * a + b * b - 10.0 * a * b + 20.0;
    vec![f1, a * a + b * b]
}

fn on_circle(r: f64, psi: f64) -> f64 {
    let r2 = r * r;
    let s = psi.sin();
    r2 * r2 * (1.0 - 0.5 * s * s) - r2 * (psi.cos() + 5.0 * s) + 20.0
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Angle `psi` in `[0, 2 pi)` minimizing `f1` on the circle of radius `r`.
fn best_psi(r: f64) -> f64 {
    const GRID: usize = 720;
    let step = 2.0 * PI / GRID as f64;
    let best = (0..GRID)
        .min_by(|&i, &j| on_circle(r, i as f64 * step).total_cmp(&on_circle(r, j as f64 * step)))
        .unwrap_or(0);
    let centre = best as f64 * step;
    golden_min(|p| on_circle(r, p), centre - step, centre + step, 80)
}

fn min_on_circle(r: f64) -> f64 {
    on_circle(r, best_psi(r))
}

/// Radius of the global `f1` minimum: the end of the Pareto curve.
fn radius_limit() -> f64 {
    static LIMIT: OnceLock<f64> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        let steps = 3000;
        let h = 3.0 / steps as f64;
        let best = (1..=steps)
            .min_by(|&i, &j| min_on_circle(i as f64 * h).total_cmp(&min_on_circle(j as f64 * h)))
            .unwrap_or(steps);
        let c = best as f64 * h;
        golden_min(min_on_circle, c - h, (c + h).min(3.0), 80)
    })
}

/// Pareto point at radius `r` on the first half (`x1 + x2 > 0`).
fn point_at(r: f64) -> [f64; 2] {
    let phi = 0.5 * best_psi(r);
    let p = [r * phi.cos(), r * phi.sin()];
    if p[0] + p[1] >= 0.0 {
        p
    } else {
        [-p[0], -p[1]]
    }
}

pub(super) fn sample(rng: &mut RngStream) -> (Vec<f64>, usize) {
    let r = radius_limit() * (1.0 - rng.uniform());
    let p = point_at(r);
    if rng.index(2) == 0 {
        (p.to_vec(), 0)
    } else {
        (vec![-p[0], -p[1]], 1)
    }
}

pub(super) fn locate(x: &[f64]) -> usize {
    usize::from(x[0] + x[1] < 0.0)
}

pub(super) fn mirror(x: &[f64]) -> Vec<f64> {
    vec![-x[0], -x[1]]
}

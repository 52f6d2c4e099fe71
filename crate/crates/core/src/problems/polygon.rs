//! Polygon: minimize the distances to the `M` vertices of a regular `M`-gon.
//!
//! Nine copies of the polygon (circumradius 7) sit on the centres
//! `{20, 50, 80}^2` inside `[0, 100]^2`, and `f_k` is the distance to the
//! nearest `k`-th vertex over all copies. Each copy's interior is one
//! equivalent Pareto set. The copies are more than four circumradii apart, so
//! every objective of a point inside a copy is measured to that copy.

use std::f64::consts::PI;

use crate::rng::RngStream;

pub(super) const LOWER: f64 = 0.0;
pub(super) const UPPER: f64 = 100.0;
pub(super) const RADIUS: f64 = 7.0;
const CENTRES: [f64; 3] = [20.0, 50.0, 80.0];

pub(super) fn centre(label: usize) -> [f64; 2] {
    [CENTRES[label / 3], CENTRES[label % 3]]
}

pub(super) fn vertex(label: usize, k: usize, m: usize) -> [f64; 2] {
    let c = centre(label);
    let phi = PI / 2.0 + 2.0 * PI * k as f64 / m as f64;
    [c[0] + RADIUS * phi.cos(), c[1] + RADIUS * phi.sin()]
}

pub(super) fn evaluate(m: usize, x: &[f64]) -> Vec<f64> {
    (0..m)
        .map(|k| {
            (0..9)
                .map(|label| {
                    let v = vertex(label, k, m);
                    ((x[0] - v[0]).powi(2) + (x[1] - v[1]).powi(2)).sqrt()
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

pub(super) fn sample(m: usize, rng: &mut RngStream) -> (Vec<f64>, usize) {
    let label = rng.index(9);
    let k = rng.index(m);
    let c = centre(label);
    let a = vertex(label, k, m);
    let b = vertex(label, (k + 1) % m, m);
    // Uniform point in the triangle (c, a, b).
    let (mut u, mut v) = (rng.uniform(), rng.uniform());
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    let x = [
        c[0] + u * (a[0] - c[0]) + v * (b[0] - c[0]),
        c[1] + u * (a[1] - c[1]) + v * (b[1] - c[1]),
    ];
    (x.to_vec(), label)
}

pub(super) fn locate(x: &[f64]) -> usize {
    (0..9)
        .min_by(|&i, &j| {
            let di = (x[0] - centre(i)[0]).powi(2) + (x[1] - centre(i)[1]).powi(2);
            let dj = (x[0] - centre(j)[0]).powi(2) + (x[1] - centre(j)[1]).powi(2);
            di.total_cmp(&dj)
        })
        .unwrap_or(0)
}

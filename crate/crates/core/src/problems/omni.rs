//! Omni-test: `f1 = sum sin(pi x_j)`, `f2 = sum cos(pi x_j)` on `[0, 6]^D`.
//!
//! The Pareto set consists of the `3^D` boxes-worth of points where every
//! coordinate shares the same offset `s` in `[0, 1/2]`:
//! `x_j = 2 k_j + 1 + s` with `k_j` in `{0, 1, 2}`.

use std::f64::consts::PI;

use crate::rng::RngStream;

pub(super) const LOWER: f64 = 0.0;
pub(super) const UPPER: f64 = 6.0;

pub(super) fn evaluate(x: &[f64]) -> Vec<f64> {
    let f1 = x.iter().map(|v| (PI * v).sin()).sum();
    let f2 = x.iter().map(|v| (PI * v).cos()).sum();
    vec![f1, f2]
}

pub(super) fn sample(d: usize, rng: &mut RngStream) -> (Vec<f64>, usize) {
    let s = rng.uniform_in(0.0, 0.5);
    let mut label = 0;
    let mut place = 1;
    let mut x = Vec::with_capacity(d);
    for _ in 0..d {
        let k = rng.index(3);
        label += k * place;
        place *= 3;
        x.push(2.0 * k as f64 + 1.0 + s);
    }
    (x, label)
}

pub(super) fn locate(x: &[f64]) -> usize {
    let mut label = 0;
    let mut place = 1;
    for v in x {
        let k = ((v / 2.0).floor() as i64).clamp(0, 2) as usize;
        label += k * place;
        place *= 3;
    }
    label
}

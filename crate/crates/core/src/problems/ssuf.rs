//! SS-UF1 and SS-UF3, two-variable problems with two symmetric Pareto sets.
//!
//! SS-UF1 on `[1, 3] x [-1, 1]`:
//! `f1 = |x1 - 2|`, `f2 = 1 - sqrt|x1 - 2| + 2 (x2 - sin(6 pi |x1 - 2| + pi))^2`.
//! Its Pareto sets are mirror images about `x1 = 2`.
//!
//! SS-UF3 on `[0, 1] x [0, 2]`:
//! `f1 = x1`, `f2 = 1 - sqrt(x1) + 2 (4 y^2 - 2 cos(20 pi y / sqrt 2) + 2)` with
//! `y = x2 - sqrt(x1)` when `x2 <= 1` and `y = x2 - 1 - sqrt(x1)` otherwise.
//! Its Pareto sets `x2 = sqrt(x1)` and `x2 = sqrt(x1) + 1` are translates.

use std::f64::consts::{PI, SQRT_2};

use crate::rng::RngStream;

pub(super) fn evaluate_ssuf1(x: &[f64]) -> Vec<f64> {
    let s = (x[0] - 2.0).abs();
    let r = x[1] - (6.0 * PI * s + PI).sin();
    vec![s, 1.0 - s.sqrt() + 2.0 * r * r]
}

pub(super) fn sample_ssuf1(rng: &mut RngStream) -> (Vec<f64>, usize) {
    let s = rng.uniform_in(0.0, 1.0);
    let subset = rng.index(2);
    let x1 = if subset == 0 { 2.0 - s } else { 2.0 + s };
    (vec![x1, (6.0 * PI * s + PI).sin()], subset)
}

pub(super) fn locate_ssuf1(x: &[f64]) -> usize {
    usize::from(x[0] >= 2.0)
}

pub(super) fn mirror_ssuf1(x: &[f64]) -> Vec<f64> {
    vec![4.0 - x[0], x[1]]
}

pub(super) fn evaluate_ssuf3(x: &[f64]) -> Vec<f64> {
    let root = x[0].sqrt();
    let y = if x[1] <= 1.0 { x[1] - root } else { x[1] - 1.0 - root };
    let g = 4.0 * y * y - 2.0 * (20.0 * y * PI / SQRT_2).cos() + 2.0;
    vec![x[0], 1.0 - root + 2.0 * g]
}

pub(super) fn sample_ssuf3(rng: &mut RngStream) -> (Vec<f64>, usize) {
    // x1 = 0 on the upper set would land on the lower branch's domain.
    let x1 = 1.0 - rng.uniform();
    let subset = rng.index(2);
    (vec![x1, x1.sqrt() + subset as f64], subset)
}

pub(super) fn locate_ssuf3(x: &[f64]) -> usize {
    usize::from(x[1] > 1.0)
}

pub(super) fn mirror_ssuf3(x: &[f64]) -> Vec<f64> {
    if x[1] > 1.0 {
        vec![x[0], x[1] - 1.0]
    } else {
        vec![x[0], x[1] + 1.0]
    }
}

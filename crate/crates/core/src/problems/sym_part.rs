//! SYM-PART: nine translated copies of a two-objective segment problem.
//!
//! The decision vector is mapped to tile coordinates `(t1, t2)` in
//! `{-1, 0, 1}^2` and an in-tile offset `p`; then
//! `f1 = (p1 + a)^2 + p2^2`, `f2 = (p1 - a)^2 + p2^2` with `a = 1`, `b = 10`,
//! `c = 8` on `[-20, 20]^2`. The Pareto set in each tile is `p1` in `[-a, a]`,
//! `p2 = 0`.
//!
//! The rotated variant first rotates `x` by `pi/4`. The distorted variant
//! additionally bends the rotated coordinates: `z2 = y2 - sin(pi y1 / 2)`,
//! so each Pareto segment becomes a half sine wave.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::rng::RngStream;

const A: f64 = 1.0;
const B: f64 = 10.0;
const C: f64 = 8.0;
const DISTORTION: f64 = 1.0;

pub(super) const LOWER: f64 = -20.0;
pub(super) const UPPER: f64 = 20.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum Variant {
    Plain,
    Rotated,
    Distorted,
}

fn rotate(x: &[f64]) -> [f64; 2] {
    let (s, c) = FRAC_PI_4.sin_cos();
    [c * x[0] - s * x[1], s * x[0] + c * x[1]]
}

fn unrotate(y: [f64; 2]) -> [f64; 2] {
    let (s, c) = FRAC_PI_4.sin_cos();
    [c * y[0] + s * y[1], -s * y[0] + c * y[1]]
}

fn to_tile_space(variant: Variant, x: &[f64]) -> [f64; 2] {
    match variant {
        Variant::Plain => [x[0], x[1]],
        Variant::Rotated => rotate(x),
        Variant::Distorted => {
            let y = rotate(x);
            [y[0], y[1] - DISTORTION * (PI * y[0] / 2.0).sin()]
        }
    }
}

fn from_tile_space(variant: Variant, z: [f64; 2]) -> [f64; 2] {
    match variant {
        Variant::Plain => z,
        Variant::Rotated => unrotate(z),
        Variant::Distorted => unrotate([z[0], z[1] + DISTORTION * (PI * z[0] / 2.0).sin()]),
    }
}

fn tile(v: f64, offset: f64, width: f64) -> f64 {
    let t = ((v.abs() - offset) / width).ceil().min(1.0);
    // ceil of a value in (-1, 0] is -0.0; normalise the sign.
    if t <= 0.0 {
        0.0
    } else {
        v.signum() * t
    }
}

fn tiles(z: [f64; 2]) -> (f64, f64) {
    (tile(z[0], A + C / 2.0, 2.0 * A + C), tile(z[1], B / 2.0, B))
}

pub(super) fn evaluate(variant: Variant, x: &[f64]) -> Vec<f64> {
    let z = to_tile_space(variant, x);
    let (t1, t2) = tiles(z);
    let p1 = z[0] - t1 * (C + 2.0 * A);
    let p2 = z[1] - t2 * B;
    vec![(p1 + A).powi(2) + p2 * p2, (p1 - A).powi(2) + p2 * p2]
}

pub(super) fn sample(variant: Variant, rng: &mut RngStream) -> (Vec<f64>, usize) {
    let label = rng.index(9);
    let t1 = (label / 3) as f64 - 1.0;
    let t2 = (label % 3) as f64 - 1.0;
    let p1 = rng.uniform_in(-A, A);
    let z = [p1 + t1 * (C + 2.0 * A), t2 * B];
    let x = from_tile_space(variant, z);
    (x.to_vec(), label)
}

pub(super) fn locate(variant: Variant, x: &[f64]) -> usize {
    let (t1, t2) = tiles(to_tile_space(variant, x));
    ((t1 + 1.0) as usize) * 3 + (t2 + 1.0) as usize
}

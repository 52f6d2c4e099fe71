//! Objective-space normalization and normalized solution-space distance.

use serde::{Deserialize, Serialize};

use crate::types::Bounds;

/// Floor applied to degenerate normalization denominators.
pub const DENOMINATOR_FLOOR: f64 = 1e-12;

/// `f'_i = (f_i - z*_i) / (z^worst_i - z*_i)`, the denominator floored at
/// [`DENOMINATOR_FLOOR`].
///
/// ```
/// use mmoada::normalize::normalize_objective;
/// let f = normalize_objective(&[3.0, 5.0], &[1.0, 1.0], &[5.0, 9.0]);
/// assert_eq!(f, vec![0.5, 0.5]);
/// ```
pub fn normalize_objective(f: &[f64], ideal: &[f64], worst: &[f64]) -> Vec<f64> {
    f.iter()
        .zip(ideal.iter().zip(worst))
        .map(|(v, (z, w))| (v - z) / (w - z).max(DENOMINATOR_FLOOR))
        .collect()
}

/// How a strategy maps raw objective vectors into its normalized space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalizationScheme {
    /// Ideal point and current worst point.
    MinWorst,
    /// Ideal point and hyperplane intercepts through the extreme points.
    Intercept,
}

/// An affine per-axis map `f -> (f - origin) / scale`.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalizer {
    origin: Vec<f64>,
    scale: Vec<f64>,
}

impl Normalizer {
    pub fn min_worst(ideal: &[f64], worst: &[f64]) -> Self {
        Self {
            origin: ideal.to_vec(),
            scale: ideal
                .iter()
                .zip(worst)
                .map(|(z, w)| (w - z).max(DENOMINATOR_FLOOR))
                .collect(),
        }
    }

    pub fn identity(m: usize) -> Self {
        Self {
            origin: vec![0.0; m],
            scale: vec![1.0; m],
        }
    }

    /// Translation by the ideal point only.
    pub fn translate(ideal: &[f64]) -> Self {
        Self {
            origin: ideal.to_vec(),
            scale: vec![1.0; ideal.len()],
        }
    }

    /// Intercept-based normalization over `rows`.
    ///
    /// Each axis gets the row minimizing the achievement scalarizing function
    /// with a near-axis weight; the hyperplane through those extreme points
    /// gives the intercepts. A singular system, a non-positive intercept, or
    /// an intercept below `1e-6` falls back to the worst point on every axis.
    pub fn intercept<'a, I>(ideal: &[f64], rows: I) -> Self
    where
        I: IntoIterator<Item = &'a [f64]> + Clone,
    {
        let m = ideal.len();
        let mut extremes = vec![vec![0.0; m]; m];
        let mut best_asf = vec![f64::INFINITY; m];
        let mut worst = vec![f64::NEG_INFINITY; m];
        for f in rows.clone() {
            let t: Vec<f64> = f.iter().zip(ideal).map(|(v, z)| v - z).collect();
            for (w, v) in worst.iter_mut().zip(&t) {
                *w = w.max(*v);
            }
            for axis in 0..m {
                let asf = t
                    .iter()
                    .enumerate()
                    .map(|(k, v)| if k == axis { *v } else { *v / 1e-6 })
                    .fold(f64::NEG_INFINITY, f64::max);
                if asf < best_asf[axis] {
                    best_asf[axis] = asf;
                    extremes[axis].clone_from(&t);
                }
            }
        }
        let fallback: Vec<f64> = worst.iter().map(|w| w.max(DENOMINATOR_FLOOR)).collect();
        let scale = match solve(extremes, vec![1.0; m]) {
            Some(b) => {
                let intercepts: Vec<f64> = b.iter().map(|v| 1.0 / v).collect();
                if intercepts.iter().all(|a| a.is_finite() && *a > 1e-6) {
                    intercepts
                } else {
                    fallback
                }
            }
            None => fallback,
        };
        Self {
            origin: ideal.to_vec(),
            scale,
        }
    }

    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; f.len()];
        self.apply_into(f, &mut out);
        out
    }

    pub fn apply_into(&self, f: &[f64], out: &mut [f64]) {
        for (k, o) in out.iter_mut().enumerate() {
            *o = (f[k] - self.origin[k]) / self.scale[k];
        }
    }

    pub fn scale(&self) -> &[f64] {
        &self.scale
    }
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = ((row + 1)..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Euclidean distance after dividing each coordinate by its bound width.
///
/// ```
/// use mmoada::{normalize::normalized_solution_distance, types::Bounds};
/// let b = Bounds::new(vec![0.0, 0.0], vec![1.0, 100.0]).unwrap();
/// let d = normalized_solution_distance(&[0.0, 0.0], &[1.0, 100.0], &b);
/// assert!((d - 2f64.sqrt()).abs() < 1e-15);
/// ```
pub fn normalized_solution_distance(x: &[f64], y: &[f64], bounds: &Bounds) -> f64 {
    squared_normalized_distance(x, y, bounds).sqrt()
}

pub(crate) fn squared_normalized_distance(x: &[f64], y: &[f64], bounds: &Bounds) -> f64 {
    x.iter()
        .zip(y)
        .enumerate()
        .map(|(j, (a, b))| {
            let d = (a - b) / bounds.width(j);
            d * d
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ideal_maps_to_zero() {
        assert_eq!(normalize_objective(&[1.0, 2.0], &[1.0, 2.0], &[4.0, 6.0]), vec![0.0, 0.0]);
    }

    #[test]
    fn degenerate_axis_uses_floor() {
        let f = normalize_objective(&[2.0, 3.0], &[1.0, 1.0], &[1.0, 5.0]);
        assert_eq!(f[0], 1.0 / 1e-12);
        assert_eq!(f[1], 0.5);
    }

    #[test]
    fn worst_maps_to_ones() {
        let ideal = [0.5, -2.0, 3.0];
        let worst = [1.5, 2.0, 10.0];
        let f = normalize_objective(&worst, &ideal, &worst);
        for v in f {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn distance_examples() {
        let b = Bounds::uniform(2, 0.0, 10.0).unwrap();
        assert_eq!(normalized_solution_distance(&[3.0, 4.0], &[3.0, 4.0], &b), 0.0);
        let d = normalized_solution_distance(&[0.0, 0.0], &[10.0, 10.0], &b);
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn intercepts_on_linear_front() {
        // Points on f1 + f2 / 2 = 1 with ideal 0: intercepts (1, 2).
        let rows: Vec<Vec<f64>> = (0..=10)
            .map(|i| {
                let a = i as f64 / 10.0;
                vec![a, 2.0 * (1.0 - a)]
            })
            .collect();
        let n = Normalizer::intercept(&[0.0, 0.0], rows.iter().map(|r| r.as_slice()));
        assert!((n.scale()[0] - 1.0).abs() < 1e-9);
        assert!((n.scale()[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn intercept_falls_back_on_degenerate_extremes() {
        let rows = [vec![1.0, 1.0], vec![1.0, 1.0]];
        let n = Normalizer::intercept(&[0.0, 0.0], rows.iter().map(|r| r.as_slice()));
        assert_eq!(n.scale(), &[1.0, 1.0]);
    }

    proptest! {
        #[test]
        fn distance_invariant_under_affine_rescaling(
            x in proptest::collection::vec(0.0f64..1.0, 3),
            y in proptest::collection::vec(0.0f64..1.0, 3),
            scale in proptest::collection::vec(0.1f64..50.0, 3),
            shift in proptest::collection::vec(-10.0f64..10.0, 3),
        ) {
            let unit = Bounds::uniform(3, 0.0, 1.0).unwrap();
            let lo: Vec<f64> = shift.clone();
            let hi: Vec<f64> = shift.iter().zip(&scale).map(|(s, c)| s + c).collect();
            let scaled = Bounds::new(lo, hi).unwrap();
            let map = |p: &[f64]| -> Vec<f64> {
                p.iter().enumerate().map(|(j, v)| shift[j] + scale[j] * v).collect()
            };
            let d0 = normalized_solution_distance(&x, &y, &unit);
            let d1 = normalized_solution_distance(&map(&x), &map(&y), &scaled);
            prop_assert!((d0 - d1).abs() < 1e-9);
        }
    }
}

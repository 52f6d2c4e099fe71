//! Weight/reference vector generation by simplex-lattice design.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `N` weight vectors on the unit simplex together with their unit-length forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorSet {
    weights: Vec<Vec<f64>>,
    unit: Vec<Vec<f64>>,
}

impl VectorSet {
    /// Wraps explicit weight rows. Rows must be nonnegative with a positive sum;
    /// they are not renormalized.
    pub fn from_weights(weights: Vec<Vec<f64>>) -> Result<Self> {
        let m = weights.first().map(Vec::len).ok_or(Error::EmptyInput("weights"))?;
        for w in &weights {
            if w.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    actual: w.len(),
                });
            }
            if w.iter().any(|v| v.is_nan() || *v < 0.0) || w.iter().sum::<f64>() <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "weight row {w:?} must be nonnegative with a positive sum"
                )));
            }
        }
        let unit = weights.iter().map(|w| unit_vector(w)).collect();
        Ok(Self { weights, unit })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn num_objectives(&self) -> usize {
        self.weights[0].len()
    }

    pub fn weight(&self, i: usize) -> &[f64] {
        &self.weights[i]
    }

    pub fn unit(&self, i: usize) -> &[f64] {
        &self.unit[i]
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn units(&self) -> &[Vec<f64>] {
        &self.unit
    }

    /// True for vectors along a coordinate axis, e.g. `(1, 0, ..., 0)`.
    pub fn is_axis(&self, i: usize) -> bool {
        self.weights[i].iter().filter(|v| **v > 0.0).count() == 1
    }

    /// Indices of the `k` weight vectors closest to `w_i` (Euclidean), `i` first.
    pub fn nearest(&self, i: usize, k: usize) -> Vec<usize> {
        let wi = &self.weights[i];
        let mut order: Vec<(f64, usize)> = self
            .weights
            .iter()
            .enumerate()
            .map(|(j, wj)| (squared_distance(wi, wj), j))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        order.into_iter().take(k.min(self.len())).map(|(_, j)| j).collect()
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn unit_vector(w: &[f64]) -> Vec<f64> {
    let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
    w.iter().map(|v| v / norm).collect()
}

/// Enumerates all compositions `h_1 + ... + h_m = h` of nonnegative integers,
/// in lexicographic order of `(h_1, ..., h_m)` descending from the last axis.
fn compositions(m: usize, h: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == m - 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            rec(m, left - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, h, &mut Vec::with_capacity(m), &mut out);
    out
}

/// All vectors `(h_1/H, ..., h_M/H)` with nonnegative integers summing to `H`.
///
/// Produces `C(H+M-1, M-1)` rows.
///
/// ```
/// let w = mmoada::weights::simplex_lattice(2, 99).unwrap();
/// assert_eq!(w.len(), 100);
/// assert_eq!(w.weight(0), &[0.0, 1.0]);
/// ```
pub fn simplex_lattice(m: usize, h: usize) -> Result<VectorSet> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("need M >= 2, got {m}")));
    }
    if h < 1 {
        return Err(Error::InvalidParameter(format!("need H >= 1, got {h}")));
    }
    let rows = compositions(m, h)
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as f64 / h as f64).collect())
        .collect();
    VectorSet::from_weights(rows)
}

/// Boundary layer with `h1` divisions plus an inner layer with `h2` divisions
/// shrunk toward the simplex centroid by `w -> w/2 + 1/(2M)`.
pub fn two_layer(m: usize, h1: usize, h2: usize) -> Result<VectorSet> {
    let outer = simplex_lattice(m, h1)?;
    let inner = simplex_lattice(m, h2)?;
    let shift = 1.0 / (2.0 * m as f64);
    let mut rows: Vec<Vec<f64>> = outer.weights;
    for w in inner.weights {
        let shrunk: Vec<f64> = w.iter().map(|v| v / 2.0 + shift).collect();
        if !rows.contains(&shrunk) {
            rows.push(shrunk);
        }
    }
    VectorSet::from_weights(rows)
}

/// Lattice settings that give `N = 100, 105, 210, 156, 230` for
/// `M = 2, 3, 5, 8, 10`. Two layers are used from `M = 6` up.
pub fn lattice_divisions(m: usize) -> Result<(usize, Option<usize>)> {
    match m {
        2 => Ok((99, None)),
        3 => Ok((13, None)),
        5 => Ok((6, None)),
        8 => Ok((3, Some(2))),
        10 => Ok((3, Some(1))),
        _ => Err(Error::UnsupportedProblem(format!(
            "no weight-vector setting for M = {m}; supported M: 2, 3, 5, 8, 10"
        ))),
    }
}

/// The benchmark weight vectors for `m` objectives.
pub fn standard_vectors(m: usize) -> Result<VectorSet> {
    match lattice_divisions(m)? {
        (h, None) => simplex_lattice(m, h),
        (h1, Some(h2)) => two_layer(m, h1, h2),
    }
}

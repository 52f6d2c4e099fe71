//! Solutions, objective vectors, and the adaptive-size population.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the box-constrained solution space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionVector(pub Vec<f64>);

/// The image of a [`DecisionVector`] under the objective map. Minimized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector(pub Vec<f64>);

impl Deref for DecisionVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for DecisionVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl From<Vec<f64>> for ObjectiveVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// Per-variable lower and upper bounds of the solution space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    /// Zero-width or inverted intervals are rejected.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::EmptyInput("bounds"));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && hi > lo) {
                return Err(Error::InvalidParameter(format!(
                    "bound {j} must satisfy lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval on every axis.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    pub fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        for (index, &value) in x.iter().enumerate() {
            let (lower, upper) = (self.lower[index], self.upper[index]);
            if !(value >= lower && value <= upper) {
                return Err(Error::OutOfBounds {
                    index,
                    value,
                    lower,
                    upper,
                });
            }
        }
        Ok(())
    }

    pub fn clamp(&self, j: usize, v: f64) -> f64 {
        v.max(self.lower[j]).min(self.upper[j])
    }
}

/// A solution, its cached objective vector, and its subproblem (0-based).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub x: DecisionVector,
    pub f: ObjectiveVector,
    pub subproblem: usize,
}

impl Individual {
    pub fn new(x: impl Into<DecisionVector>, f: impl Into<ObjectiveVector>, subproblem: usize) -> Self {
        Self {
            x: x.into(),
            f: f.into(),
            subproblem,
        }
    }
}

/// Adaptive-size population with the approximated ideal point.
///
/// The ideal point is the componentwise minimum over every objective vector
/// ever offered to [`Population::update_ideal`], so it only moves down. The
/// worst point is recomputed from the current members on demand.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Population {
    members: Vec<Individual>,
    ideal: Vec<f64>,
}

impl Population {
    /// Builds a population and seeds the ideal point from the members.
    pub fn from_members(members: Vec<Individual>) -> Self {
        let mut pop = Self {
            members: Vec::with_capacity(members.len()),
            ideal: Vec::new(),
        };
        for m in members {
            pop.update_ideal(&m.f);
            pop.members.push(m);
        }
        pop
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    pub fn get(&self, i: usize) -> &Individual {
        &self.members[i]
    }

    pub fn ideal(&self) -> &[f64] {
        &self.ideal
    }

    pub fn num_objectives(&self) -> usize {
        self.ideal.len()
    }

    /// `ideal_i <- min(ideal_i, f_i)`.
    pub fn update_ideal(&mut self, f: &[f64]) {
        if self.ideal.is_empty() {
            self.ideal = f.to_vec();
            return;
        }
        for (z, v) in self.ideal.iter_mut().zip(f) {
            if *v < *z {
                *z = *v;
            }
        }
    }

    /// Componentwise maximum over the current members and `extra`.
    pub fn worst_with(&self, extra: Option<&[f64]>) -> Vec<f64> {
        let m = self.num_objectives();
        let mut worst = vec![f64::NEG_INFINITY; m];
        let rows = self.members.iter().map(|ind| &ind.f[..]).chain(extra);
        for f in rows {
            for (w, v) in worst.iter_mut().zip(f) {
                if *v > *w {
                    *w = *v;
                }
            }
        }
        worst
    }

    pub fn worst(&self) -> Vec<f64> {
        self.worst_with(None)
    }

    pub fn push(&mut self, ind: Individual) {
        self.update_ideal(&ind.f);
        self.members.push(ind);
    }

    /// Removes the members at `indices` (any order, no duplicates).
    pub fn remove_many(&mut self, indices: &[usize]) {
        if indices.is_empty() {
            return;
        }
        let mut drop = vec![false; self.members.len()];
        for &i in indices {
            drop[i] = true;
        }
        let mut k = 0;
        self.members.retain(|_| {
            let keep = !drop[k];
            k += 1;
            keep
        });
    }

    /// Members assigned to subproblem `j`, by position.
    pub fn indices_on(&self, j: usize) -> Vec<usize> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.subproblem == j)
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of members per subproblem.
    pub fn occupancy(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for m in &self.members {
            if m.subproblem < n {
                counts[m.subproblem] += 1;
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn update_ideal_examples() {
        let mut pop = Population::from_members(vec![Individual::new(vec![0.0], vec![0.0, 0.0], 0)]);
        pop.update_ideal(&[-1.0, 3.0]);
        assert_eq!(pop.ideal(), &[-1.0, 0.0]);
        pop.update_ideal(&[1.0, 1.0]);
        assert_eq!(pop.ideal(), &[-1.0, 0.0]);
    }

    #[test]
    fn fresh_population_ideal_is_componentwise_min() {
        let pop = Population::from_members(vec![
            Individual::new(vec![0.0], vec![3.0, 1.0], 0),
            Individual::new(vec![0.0], vec![1.0, 5.0], 1),
            Individual::new(vec![0.0], vec![2.0, 0.5], 2),
        ]);
        assert_eq!(pop.ideal(), &[1.0, 0.5]);
        assert_eq!(pop.worst(), vec![3.0, 5.0]);
    }

    #[test]
    fn bounds_reject_zero_width() {
        assert!(Bounds::new(vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(Bounds::new(vec![0.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn remove_many_keeps_order() {
        let members = (0..5)
            .map(|i| Individual::new(vec![i as f64], vec![i as f64], i))
            .collect();
        let mut pop = Population::from_members(members);
        pop.remove_many(&[3, 0]);
        let left: Vec<usize> = pop.members().iter().map(|m| m.subproblem).collect();
        assert_eq!(left, vec![1, 2, 4]);
    }
}

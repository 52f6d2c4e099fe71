use crate::pareto::dominates;
use crate::types::Individual;

/// Every non-dominated solution seen so far. Members are mutually
/// non-dominated; members with equal objective vectors are all kept.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UnboundedArchive {
    members: Vec<Individual>,
}

impl UnboundedArchive {
    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Inserts `x` unless a member dominates it, dropping members `x` dominates.
    /// Returns whether `x` was inserted.
    ///
    /// ```
    /// use mmoada::{baselines::UnboundedArchive, Individual};
    /// let mut a = UnboundedArchive::default();
    /// assert!(a.update(&Individual::new(vec![0.0], vec![2.0, 2.0], 0)));
    /// assert!(!a.update(&Individual::new(vec![0.0], vec![3.0, 2.0], 0)));
    /// assert!(a.update(&Individual::new(vec![0.0], vec![1.0, 1.0], 0)));
    /// assert_eq!(a.len(), 1);
    /// ```
    pub fn update(&mut self, x: &Individual) -> bool {
        if self.members.iter().any(|m| dominates(&m.f, &x.f)) {
            return false;
        }
        self.members.retain(|m| !dominates(&x.f, &m.f));
        self.members.push(x.clone());
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pareto::non_dominated_indices;
    use crate::rng::RngStream;
    use proptest::prelude::*;

    fn ind(f: Vec<f64>) -> Individual {
        Individual::new(vec![0.0], f, 0)
    }

    #[test]
    fn dominating_insert_removes_two() {
        let mut a = UnboundedArchive::default();
        a.update(&ind(vec![1.0, 3.0]));
        a.update(&ind(vec![3.0, 1.0]));
        a.update(&ind(vec![0.0, 5.0]));
        assert_eq!(a.len(), 3);
        assert!(a.update(&ind(vec![0.5, 0.5])));
        let fs: Vec<Vec<f64>> = a.members().iter().map(|m| m.f.0.clone()).collect();
        assert_eq!(fs, vec![vec![0.0, 5.0], vec![0.5, 0.5]]);
    }

    fn sorted(mut v: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
        v.sort_by(|a, b| a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
        v
    }

    proptest! {
        #[test]
        fn matches_quadratic_filter(seed in any::<u64>(), n in 1usize..120, m in 2usize..4) {
            let mut rng = RngStream::new(seed);
            let mut a = UnboundedArchive::default();
            let mut seen = Vec::new();
            for _ in 0..n {
                // Coarse grid values so duplicates and ties occur.
                let f: Vec<f64> = (0..m).map(|_| (rng.uniform() * 6.0).floor()).collect();
                a.update(&ind(f.clone()));
                seen.push(f);
                let fs: Vec<&[f64]> = a.members().iter().map(|x| &x.f[..]).collect();
                prop_assert_eq!(non_dominated_indices(&fs).len(), fs.len());
            }
            let want: Vec<Vec<f64>> = non_dominated_indices(&seen).into_iter().map(|i| seen[i].clone()).collect();
            let got: Vec<Vec<f64>> = a.members().iter().map(|x| x.f.0.clone()).collect();
            prop_assert_eq!(sorted(got), sorted(want));
        }
    }
}

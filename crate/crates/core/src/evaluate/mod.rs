//! Indicators, post-processing selectors and statistical comparison.

mod stats;

pub use stats::{aps, outperformance, wilcoxon_rank_sum, ScoreTable, EXACT_LIMIT};

use crate::ada::{population_normalizer, Context, Strategy};
use crate::error::{Error, Result};
use crate::maxmin::greedy_maxmin;
use crate::normalize::squared_normalized_distance;
use crate::pareto::non_dominated_indices;
use crate::problems::ReferenceSet;
use crate::rng::RngStream;
use crate::scalarize::reference_gammas;
use crate::types::{Bounds, Individual, Population};
use crate::weights::VectorSet;

fn check_sets<A: AsRef<[f64]>, R: AsRef<[f64]>>(a: &[A], reference: &[R]) -> Result<usize> {
    if a.is_empty() {
        return Err(Error::EmptyInput("approximation set"));
    }
    if reference.is_empty() {
        return Err(Error::EmptyInput("reference set"));
    }
    let dim = reference[0].as_ref().len();
    for v in a.iter().map(AsRef::as_ref).chain(reference.iter().map(AsRef::as_ref)) {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: v.len(),
            });
        }
    }
    Ok(dim)
}

fn mean_min<A: AsRef<[f64]>, R: AsRef<[f64]>>(a: &[A], reference: &[R], term: impl Fn(f64, f64) -> f64) -> f64 {
    let sum: f64 = reference
        .iter()
        .map(|z| {
            let z = z.as_ref();
            a.iter()
                .map(|x| x.as_ref().iter().zip(z).map(|(xi, zi)| term(*xi, *zi)).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .sum();
    sum / reference.len() as f64
}

/// IGD+: mean over reference points `z` of the smallest
/// `sqrt(sum_i max(a_i - z_i, 0)^2)` over `a` in `a`.
///
/// ```
/// let d = mmoada::evaluate::igd_plus(&[vec![2.0, 2.0]], &[vec![1.0, 1.0]]).unwrap();
/// assert!((d - 2f64.sqrt()).abs() < 1e-12);
/// ```
pub fn igd_plus<A: AsRef<[f64]>, R: AsRef<[f64]>>(a: &[A], reference: &[R]) -> Result<f64> {
    check_sets(a, reference)?;
    Ok(mean_min(a, reference, |x, z| {
        let d = (x - z).max(0.0);
        d * d
    }))
}

/// IGDX: mean over reference solutions of the Euclidean distance to the
/// nearest member of `a`, in problem units.
pub fn igdx<A: AsRef<[f64]>, R: AsRef<[f64]>>(a: &[A], reference: &[R]) -> Result<f64> {
    check_sets(a, reference)?;
    Ok(mean_min(a, reference, |x, z| (x - z) * (x - z)))
}

/// The best member of every subproblem under the strategy's deletion
/// criterion, then the non-dominated ones among those picks.
///
/// `t` and `t_max` feed the time-dependent criteria; pass the final
/// evaluation count for both after a run.
pub fn select_primary(pop: &Population, strategy: &Strategy, vectors: &VectorSet, t: usize, t_max: usize) -> Result<Vec<Individual>> {
    let n = vectors.len();
    let norm = population_normalizer(strategy, pop);
    let gammas = reference_gammas(vectors)?;
    let ctx = Context {
        vectors,
        gammas: &gammas,
        t,
        t_max,
    };
    let normalized: Vec<Vec<f64>> = pop.members().iter().map(|m| norm.apply(&m.f)).collect();
    let mut best: Vec<Option<usize>> = vec![None; n];
    for (i, m) in pop.members().iter().enumerate() {
        let j = m.subproblem;
        if j >= n {
            return Err(Error::InvalidSubproblem { index: j, count: n });
        }
        best[j] = match best[j] {
            Some(b) if strategy.compare(&normalized[i], &normalized[b], j, &ctx).is_lt() => Some(i),
            Some(b) => Some(b),
            None => Some(i),
        };
    }
    let picks: Vec<usize> = best.into_iter().flatten().collect();
    let fs: Vec<&[f64]> = picks.iter().map(|&i| &pop.get(i).f[..]).collect();
    Ok(non_dominated_indices(&fs).into_iter().map(|k| pop.get(picks[k]).clone()).collect())
}

/// Every member assigned to subproblem `j`.
pub fn select_secondary(pop: &Population, j: usize) -> Vec<Individual> {
    pop.members().iter().filter(|m| m.subproblem == j).cloned().collect()
}

/// Result of [`select_tertiary`].
#[derive(Clone, Debug, PartialEq)]
pub struct Tertiary {
    pub members: Vec<Individual>,
    /// Fewer non-dominated members than requested; all were returned.
    pub short: bool,
}

/// Greedy max-min subset of size `n` of the non-dominated members in the
/// normalized solution space, started from a random non-dominated member.
pub fn select_tertiary(members: &[Individual], n: usize, bounds: &Bounds, rng: &mut RngStream) -> Tertiary {
    let fs: Vec<&[f64]> = members.iter().map(|m| &m.f[..]).collect();
    let nd = non_dominated_indices(&fs);
    if nd.is_empty() {
        return Tertiary {
            members: Vec::new(),
            short: n > 0,
        };
    }
    let xs: Vec<&[f64]> = nd.iter().map(|&i| &members[i].x[..]).collect();
    let first = rng.index(nd.len());
    let picks = greedy_maxmin(&xs, bounds, n, first);
    Tertiary {
        members: picks.into_iter().map(|k| members[nd[k]].clone()).collect(),
        short: nd.len() < n,
    }
}

/// Number of equivalent Pareto subsets with at least one member of `a`
/// within normalized solution distance `eps` of that subset's reference points.
pub fn subset_coverage<A: AsRef<[f64]>>(a: &[A], reference: &ReferenceSet, bounds: &Bounds, eps: f64) -> usize {
    let labels = reference.subsets.iter().copied().max().map_or(0, |m| m + 1);
    let mut covered = vec![false; labels];
    let eps2 = eps * eps;
    for (z, &s) in reference.solutions.iter().zip(&reference.subsets) {
        if covered[s] {
            continue;
        }
        if a.iter().any(|x| squared_normalized_distance(x.as_ref(), z, bounds) <= eps2) {
            covered[s] = true;
        }
    }
    covered.iter().filter(|&&c| c).count()
}

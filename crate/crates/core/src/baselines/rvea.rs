//! RVEA: angle-penalized distance selection per reference vector, with
//! periodic adaptation of the reference vectors to the objective ranges.

use std::f64::consts::PI;

use super::nsga3::offspring;
use super::Budget;
use crate::error::Result;
use crate::scalarize::{angle_or_zero, apd_value, ApdContext};
use crate::types::Individual;
use crate::weights::{unit_vector, VectorSet};

fn gammas(units: &[Vec<f64>]) -> Vec<f64> {
    (0..units.len())
        .map(|i| {
            (0..units.len())
                .filter(|&k| k != i)
                .map(|k| angle_or_zero(&units[i], &units[k]))
                .fold(PI, f64::min)
        })
        .collect()
}

pub(super) fn run(vectors: &VectorSet, fr: f64, budget: &mut Budget<'_>) -> Result<Vec<Individual>> {
    let n = vectors.len();
    let mut pop = budget.initial(n)?;
    let base: Vec<Vec<f64>> = vectors.units().to_vec();
    let mut units = base.clone();
    let mut gamma = gammas(&units);
    let g_max = (budget.t_max - n).div_ceil(n).max(1);
    let period = ((fr * g_max as f64).ceil() as usize).max(1);
    let mut generation = 0;
    budget.log(n);
    while budget.remaining() > 0 {
        let lambda = n.min(budget.remaining());
        let children = offspring(&pop, lambda, budget)?;
        pop.extend(children);
        generation += 1;
        let ctx = ApdContext::new(generation, g_max);
        pop = select(pop, n, &units, &gamma, &ctx);
        if generation % period == 0 {
            units = adapt(&base, &pop);
            gamma = gammas(&units);
        }
        budget.log(n);
    }
    Ok(pop)
}

/// Scales the initial vectors by the current objective ranges.
fn adapt(base: &[Vec<f64>], pop: &[Individual]) -> Vec<Vec<f64>> {
    let m = base[0].len();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for p in pop {
        for k in 0..m {
            lo[k] = lo[k].min(p.f[k]);
            hi[k] = hi[k].max(p.f[k]);
        }
    }
    let range: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| (b - a).max(1e-12)).collect();
    base.iter()
        .map(|v| unit_vector(&v.iter().zip(&range).map(|(a, r)| a * r).collect::<Vec<f64>>()))
        .collect()
}

/// One member per nonempty partition (lowest APD), then the remaining
/// candidates by ascending APD until `n` are kept.
pub(super) fn select(cands: Vec<Individual>, n: usize, units: &[Vec<f64>], gamma: &[f64], ctx: &ApdContext) -> Vec<Individual> {
    if cands.len() <= n {
        return cands;
    }
    let m = units[0].len();
    let mut zmin = vec![f64::INFINITY; m];
    for c in &cands {
        for k in 0..m {
            zmin[k] = zmin[k].min(c.f[k]);
        }
    }
    let scored: Vec<(usize, f64)> = cands
        .iter()
        .map(|c| {
            let fp: Vec<f64> = c.f.iter().zip(&zmin).map(|(v, z)| v - z).collect();
            let mut best = (0, f64::INFINITY);
            for (k, u) in units.iter().enumerate() {
                let a = angle_or_zero(&fp, u);
                if a < best.1 {
                    best = (k, a);
                }
            }
            (best.0, apd_value(&fp, &units[best.0], gamma[best.0], ctx))
        })
        .collect();
    let mut elite: Vec<Option<usize>> = vec![None; units.len()];
    for (i, &(k, apd)) in scored.iter().enumerate() {
        match elite[k] {
            Some(e) if scored[e].1 <= apd => {}
            _ => elite[k] = Some(i),
        }
    }
    let mut chosen = vec![false; cands.len()];
    let mut keep: Vec<usize> = elite.iter().flatten().copied().collect();
    for &i in &keep {
        chosen[i] = true;
    }
    let mut rest: Vec<usize> = (0..cands.len()).filter(|&i| !chosen[i]).collect();
    rest.sort_by(|&a, &b| scored[a].1.total_cmp(&scored[b].1).then(a.cmp(&b)));
    keep.extend(rest.into_iter().take(n.saturating_sub(keep.len())));
    let mut slots: Vec<Option<Individual>> = cands.into_iter().map(Some).collect();
    keep.into_iter()
        .map(|i| {
            let mut c = slots[i].take().expect("each candidate kept once");
            c.subproblem = scored[i].0;
            c
        })
        .collect()
}

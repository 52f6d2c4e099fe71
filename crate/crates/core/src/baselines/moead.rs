//! MOEA/D-DE style steady-state loop shared by MOEA/D-AGR, MOEA/D-DU and
//! eMOEA/D, each with its own replacement scope.

use serde::{Deserialize, Serialize};

use super::Budget;
use crate::ada::Kind;
use crate::error::{Error, Result};
use crate::normalize::Normalizer;
use crate::scalarize::{g_dtch, g_msf, g_tch, msf_alpha, perpendicular_distance};
use crate::types::Individual;
use crate::variation::{reproduce, select_parents};
use crate::weights::VectorSet;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoeadDeConfig {
    /// Mating neighborhood size.
    pub s: usize,
    /// Probability of mating inside the neighborhood.
    pub delta: f64,
    /// Most members one child may replace.
    pub n_rep: usize,
    /// Replacement scope of MOEA/D-DU and eMOEA/D.
    pub k: usize,
}

impl Default for MoeadDeConfig {
    fn default() -> Self {
        Self {
            s: 20,
            delta: 0.9,
            n_rep: 2,
            k: 5,
        }
    }
}

impl MoeadDeConfig {
    fn validate(&self) -> Result<()> {
        if self.s < 2 || self.n_rep < 1 || self.k < 1 || !(0.0..=1.0).contains(&self.delta) {
            return Err(Error::InvalidParameter(format!("invalid MOEA/D settings {self:?}")));
        }
        Ok(())
    }
}

/// Sigmoid replacement-neighborhood size of MOEA/D-AGR:
/// `round(1 + (n - 1) / (1 + exp(-20 (t/t_max - 0.5))))`.
///
/// ```
/// use mmoada::baselines::agr_replacement_size;
/// assert_eq!(agr_replacement_size(0, 100, 100), 1);
/// assert_eq!(agr_replacement_size(50, 100, 100), 51);
/// assert_eq!(agr_replacement_size(100, 100, 100), 100);
/// ```
pub fn agr_replacement_size(t: usize, t_max: usize, n: usize) -> usize {
    let progress = if t_max == 0 { 1.0 } else { t as f64 / t_max as f64 };
    let k = 1.0 + (n as f64 - 1.0) / (1.0 + (-20.0 * (progress - 0.5)).exp());
    (k.round() as usize).clamp(1, n)
}

struct Scope<'a> {
    kind: Kind,
    vectors: &'a VectorSet,
    /// Every subproblem ordered by weight distance, per subproblem.
    order: &'a [Vec<usize>],
    cfg: &'a MoeadDeConfig,
    t: usize,
    t_max: usize,
}

/// Offers `u` to its replacement scope; returns how many members it replaced.
fn replace(scope: &Scope<'_>, pop: &mut [Individual], u: &Individual, ideal: &[f64], rng: &mut crate::rng::RngStream) -> usize {
    let n = pop.len();
    let w = scope.vectors;
    let m = ideal.len();
    let mut replaced = 0;
    match scope.kind {
        Kind::Agr => {
            let g = |f: &[f64], k: usize| g_tch(f, w.weight(k), ideal);
            let best = (0..n).min_by(|&a, &b| g(&u.f, a).total_cmp(&g(&u.f, b))).unwrap_or(0);
            let size = agr_replacement_size(scope.t, scope.t_max, n);
            let mut candidates = scope.order[best][..size].to_vec();
            rng.shuffle(&mut candidates);
            for k in candidates {
                if replaced == scope.cfg.n_rep {
                    break;
                }
                if g(&u.f, k) <= g(&pop[k].f, k) {
                    pop[k] = Individual::new(u.x.clone(), u.f.clone(), k);
                    replaced += 1;
                }
            }
        }
        Kind::Du | Kind::Emoead => {
            let mut worst = u.f.0.clone();
            for p in pop.iter() {
                for (wv, v) in worst.iter_mut().zip(p.f.iter()) {
                    *wv = wv.max(*v);
                }
            }
            let norm = Normalizer::min_worst(ideal, &worst);
            let zero = vec![0.0; m];
            let fu = norm.apply(&u.f);
            let g = |fp: &[f64], k: usize| match scope.kind {
                Kind::Du => g_dtch(fp, w.weight(k), &zero),
                _ => g_msf(fp, w.weight(k), &zero, msf_alpha(scope.t, scope.t_max, 1.0, w.weight(k))),
            };
            let key = |k: usize| match scope.kind {
                Kind::Du => perpendicular_distance(&fu, w.weight(k)),
                _ => g(&fu, k),
            };
            let mut ranked: Vec<(f64, usize)> = (0..n).map(|k| (key(k), k)).collect();
            let k_max = scope.cfg.k.min(n);
            ranked.select_nth_unstable_by(k_max - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            ranked.truncate(k_max);
            ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            for (_, k) in ranked {
                if replaced == scope.cfg.n_rep {
                    break;
                }
                if g(&fu, k) <= g(&norm.apply(&pop[k].f), k) {
                    pop[k] = Individual::new(u.x.clone(), u.f.clone(), k);
                    replaced += 1;
                }
            }
        }
        _ => unreachable!("not a MOEA/D variant"),
    }
    replaced
}

pub(super) fn run(kind: Kind, vectors: &VectorSet, cfg: &MoeadDeConfig, budget: &mut Budget<'_>) -> Result<Vec<Individual>> {
    cfg.validate()?;
    let n = vectors.len();
    let mut pop = budget.initial(n)?;
    let mut ideal = pop[0].f.0.clone();
    for p in &pop {
        update_min(&mut ideal, &p.f);
    }
    let mating: Vec<Vec<usize>> = (0..n).map(|i| vectors.nearest(i, cfg.s)).collect();
    let order: Vec<Vec<usize>> = if kind == Kind::Agr {
        (0..n).map(|i| vectors.nearest(i, n)).collect()
    } else {
        Vec::new()
    };
    let everyone: Vec<usize> = (0..n).collect();
    budget.log(n);
    while budget.remaining() > 0 {
        let mut perm = everyone.clone();
        budget.rng.shuffle(&mut perm);
        for &i in &perm {
            if budget.remaining() == 0 {
                break;
            }
            let pool = if budget.rng.uniform() < cfg.delta {
                &mating[i]
            } else {
                &everyone
            };
            let (a, b) = select_parents(pool.len(), &mut budget.rng)?;
            let x = reproduce(
                &pop[pool[a]].x,
                &pop[pool[b]].x,
                &budget.variation,
                budget.problem.bounds(),
                &mut budget.rng,
            );
            let u = budget.evaluate(x, i)?;
            update_min(&mut ideal, &u.f);
            let scope = Scope {
                kind,
                vectors,
                order: &order,
                cfg,
                t: budget.t,
                t_max: budget.t_max,
            };
            let replaced = replace(&scope, &mut pop, &u, &ideal, &mut budget.rng);
            debug_assert!(replaced <= cfg.n_rep);
        }
        budget.log(n);
    }
    Ok(pop)
}

fn update_min(ideal: &mut [f64], f: &[f64]) {
    for (z, v) in ideal.iter_mut().zip(f) {
        *z = z.min(*v);
    }
}

//! Generational NSGA-III (reference-vector niching) and theta-DEA
//! (theta-non-dominated sorting inside perpendicular-distance clusters).

use super::Budget;
use crate::ada::Kind;
use crate::error::Result;
use crate::normalize::Normalizer;
use crate::pareto::non_dominated_sort;
use crate::rng::RngStream;
use crate::scalarize::{pbi, perpendicular_distance};
use crate::types::Individual;
use crate::variation::{polynomial_mutation, sbx_pair, select_parents};
use crate::weights::VectorSet;

/// `lambda` children from uniformly mated pairs, two per crossover.
pub(super) fn offspring(pop: &[Individual], lambda: usize, budget: &mut Budget<'_>) -> Result<Vec<Individual>> {
    let mut out = Vec::with_capacity(lambda);
    while out.len() < lambda {
        let (a, b) = select_parents(pop.len(), &mut budget.rng)?;
        let bounds = budget.problem.bounds().clone();
        let (mut c1, mut c2) = sbx_pair(&pop[a].x, &pop[b].x, &budget.variation, &bounds, &mut budget.rng);
        polynomial_mutation(&mut c1, &budget.variation, &bounds, &mut budget.rng);
        polynomial_mutation(&mut c2, &budget.variation, &bounds, &mut budget.rng);
        out.push(budget.evaluate(c1, 0)?);
        if out.len() < lambda {
            out.push(budget.evaluate(c2, 0)?);
        }
    }
    Ok(out)
}

pub(super) fn run(kind: Kind, vectors: &VectorSet, budget: &mut Budget<'_>) -> Result<Vec<Individual>> {
    let n = vectors.len();
    let mut pop = budget.initial(n)?;
    let mut ideal = pop[0].f.0.clone();
    for p in &pop {
        lower(&mut ideal, &p.f);
    }
    budget.log(n);
    while budget.remaining() > 0 {
        let lambda = n.min(budget.remaining());
        let children = offspring(&pop, lambda, budget)?;
        for c in &children {
            lower(&mut ideal, &c.f);
        }
        pop.extend(children);
        pop = match kind {
            Kind::Nsga3 => nsga3_select(pop, n, vectors, &ideal, &mut budget.rng),
            _ => theta_select(pop, n, vectors, &ideal, &mut budget.rng),
        };
        budget.log(n);
    }
    Ok(pop)
}

fn lower(ideal: &mut [f64], f: &[f64]) {
    for (z, v) in ideal.iter_mut().zip(f) {
        *z = z.min(*v);
    }
}

/// Pareto fronts up to and including the one that reaches `n` members.
fn leading_fronts(cands: &[Individual], n: usize) -> Vec<Vec<usize>> {
    let fs: Vec<&[f64]> = cands.iter().map(|c| &c.f[..]).collect();
    let mut fronts = non_dominated_sort(&fs);
    let mut total = 0;
    let mut keep = 0;
    for f in &fronts {
        keep += 1;
        total += f.len();
        if total >= n {
            break;
        }
    }
    fronts.truncate(keep);
    fronts
}

/// Nearest reference line by perpendicular distance and that distance.
fn associate(fp: &[f64], vectors: &VectorSet) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for k in 0..vectors.len() {
        let d = perpendicular_distance(fp, vectors.weight(k));
        if d < best.1 {
            best = (k, d);
        }
    }
    best
}

fn normalized(cands: &[Individual], members: &[usize], ideal: &[f64]) -> Vec<Vec<f64>> {
    let norm = Normalizer::intercept(ideal, members.iter().map(|&i| &cands[i].f[..]));
    members.iter().map(|&i| norm.apply(&cands[i].f)).collect()
}

fn labelled(mut cands: Vec<Individual>, picks: &[(usize, usize)]) -> Vec<Individual> {
    let mut out = Vec::with_capacity(picks.len());
    for &(i, j) in picks {
        let mut c = std::mem::replace(&mut cands[i], Individual::new(Vec::new(), Vec::new(), 0));
        c.subproblem = j;
        out.push(c);
    }
    out
}

pub(super) fn nsga3_select(cands: Vec<Individual>, n: usize, vectors: &VectorSet, ideal: &[f64], rng: &mut RngStream) -> Vec<Individual> {
    let fronts = leading_fronts(&cands, n);
    let members: Vec<usize> = fronts.iter().flatten().copied().collect();
    let fps = normalized(&cands, &members, ideal);
    let assoc: Vec<(usize, f64)> = fps.iter().map(|fp| associate(fp, vectors)).collect();
    // Position in `members` of every candidate in `members`.
    let last = fronts.last().map_or(0, Vec::len);
    let accepted = members.len() - last;
    if members.len() <= n {
        let picks: Vec<(usize, usize)> = members.iter().zip(&assoc).map(|(&i, a)| (i, a.0)).collect();
        return labelled(cands, &picks);
    }
    let mut niche = vec![0usize; vectors.len()];
    let mut picks: Vec<(usize, usize)> = Vec::with_capacity(n);
    for p in 0..accepted {
        niche[assoc[p].0] += 1;
        picks.push((members[p], assoc[p].0));
    }
    let mut taken = vec![false; last];
    let mut active = vec![true; vectors.len()];
    while picks.len() < n {
        let min = (0..vectors.len()).filter(|&j| active[j]).map(|j| niche[j]).min().expect("a reference line with candidates remains");
        let ties: Vec<usize> = (0..vectors.len()).filter(|&j| active[j] && niche[j] == min).collect();
        let j = ties[rng.index(ties.len())];
        let pool: Vec<usize> = (0..last).filter(|&q| !taken[q] && assoc[accepted + q].0 == j).collect();
        if pool.is_empty() {
            active[j] = false;
            continue;
        }
        let q = if niche[j] == 0 {
            *pool
                .iter()
                .min_by(|&&a, &&b| assoc[accepted + a].1.total_cmp(&assoc[accepted + b].1).then(a.cmp(&b)))
                .expect("nonempty pool")
        } else {
            pool[rng.index(pool.len())]
        };
        taken[q] = true;
        niche[j] += 1;
        picks.push((members[accepted + q], j));
    }
    labelled(cands, &picks)
}

pub(super) fn theta_select(cands: Vec<Individual>, n: usize, vectors: &VectorSet, ideal: &[f64], rng: &mut RngStream) -> Vec<Individual> {
    let fronts = leading_fronts(&cands, n);
    let members: Vec<usize> = fronts.iter().flatten().copied().collect();
    let fps = normalized(&cands, &members, ideal);
    let zero = vec![0.0; ideal.len()];
    let cluster: Vec<usize> = fps.iter().map(|fp| associate(fp, vectors).0).collect();
    if members.len() <= n {
        let picks: Vec<(usize, usize)> = members.iter().zip(&cluster).map(|(&i, &j)| (i, j)).collect();
        return labelled(cands, &picks);
    }
    // Rank inside each cluster by PBI.
    let mut by_cluster: Vec<Vec<(f64, usize)>> = vec![Vec::new(); vectors.len()];
    for (p, fp) in fps.iter().enumerate() {
        let j = cluster[p];
        let theta = if vectors.is_axis(j) { 1e6 } else { 5.0 };
        by_cluster[j].push((pbi(fp, vectors.weight(j), &zero, theta).value, p));
    }
    let mut theta_fronts: Vec<Vec<usize>> = Vec::new();
    for c in &mut by_cluster {
        c.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for (rank, &(_, p)) in c.iter().enumerate() {
            if theta_fronts.len() <= rank {
                theta_fronts.push(Vec::new());
            }
            theta_fronts[rank].push(p);
        }
    }
    let mut picks: Vec<(usize, usize)> = Vec::with_capacity(n);
    for mut front in theta_fronts {
        if picks.len() + front.len() <= n {
            picks.extend(front.iter().map(|&p| (members[p], cluster[p])));
        } else {
            front.sort_unstable();
            rng.shuffle(&mut front);
            let room = n - picks.len();
            picks.extend(front[..room].iter().map(|&p| (members[p], cluster[p])));
        }
        if picks.len() == n {
            break;
        }
    }
    labelled(cands, &picks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::simplex_lattice;

    fn cand(f: Vec<f64>) -> Individual {
        Individual::new(vec![f[0]], f, 0)
    }

    #[test]
    fn small_candidate_sets_survive_whole() {
        let w = simplex_lattice(2, 9).unwrap();
        let cands: Vec<Individual> = (0..6).map(|i| cand(vec![i as f64, 5.0 - i as f64])).collect();
        let mut rng = RngStream::new(0);
        for select in [nsga3_select, theta_select] {
            let out = select(cands.clone(), 10, &w, &[0.0, 0.0], &mut rng);
            assert_eq!(out.len(), 6);
        }
    }

    #[test]
    fn first_front_outranks_dominated_points() {
        let w = simplex_lattice(2, 3).unwrap();
        let mut cands: Vec<Individual> = (0..4).map(|i| cand(vec![i as f64, 3.0 - i as f64])).collect();
        cands.extend((0..4).map(|i| cand(vec![i as f64 + 1.0, 4.0 - i as f64])));
        let mut rng = RngStream::new(0);
        let out = nsga3_select(cands, 4, &w, &[0.0, 0.0], &mut rng);
        let mut sums: Vec<f64> = out.iter().map(|c| c.f[0] + c.f[1]).collect();
        sums.dedup();
        assert_eq!(sums, vec![3.0]);
    }

    #[test]
    fn niching_spreads_over_reference_lines() {
        // Eight points in two tight groups near the two axes, plus two on the
        // diagonal; four survivors must include each diagonal point.
        let w = simplex_lattice(2, 2).unwrap();
        let mut cands = Vec::new();
        for k in 0..4 {
            let e = k as f64 * 0.01;
            cands.push(cand(vec![e, 1.0 - e]));
            cands.push(cand(vec![1.0 - e, e]));
        }
        cands.push(cand(vec![0.45, 0.55]));
        cands.push(cand(vec![0.55, 0.45]));
        let mut rng = RngStream::new(2);
        let out = nsga3_select(cands, 4, &w, &[0.0, 0.0], &mut rng);
        let per_line = out.iter().fold([0usize; 3], |mut acc, c| {
            acc[c.subproblem] += 1;
            acc
        });
        assert_eq!(per_line.iter().sum::<usize>(), 4);
        assert!(per_line.iter().all(|&c| c >= 1), "{per_line:?}");
    }

    #[test]
    fn theta_keeps_best_of_each_cluster_first() {
        let w = simplex_lattice(2, 1).unwrap();
        // All mutually non-dominated; two clusters of three.
        let cands = vec![
            cand(vec![0.0, 1.0]),
            cand(vec![0.05, 0.9]),
            cand(vec![0.1, 0.8]),
            cand(vec![1.0, 0.0]),
            cand(vec![0.9, 0.05]),
            cand(vec![0.8, 0.1]),
        ];
        let mut rng = RngStream::new(0);
        let out = theta_select(cands, 2, &w, &[0.0, 0.0], &mut rng);
        let mut got: Vec<Vec<f64>> = out.iter().map(|c| c.f.0.clone()).collect();
        got.sort_by(|a, b| a[0].total_cmp(&b[0]));
        assert_eq!(got, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }
}

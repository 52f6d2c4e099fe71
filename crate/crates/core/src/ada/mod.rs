//! Assignment, deletion and addition over a population whose size adapts.
//!
//! Each iteration generates one child `u`, assigns it to a subproblem `j`,
//! and looks at `X`: the members among the `L` nearest to `u` in the
//! normalized solution space that are also on `j`. Members of `X` worse than
//! `u` are deleted. `u` is added when it deleted something (a winner) or when
//! `X` is empty (an explorer).

mod strategy;

pub use strategy::{Context, Kind, Strategy};

use crate::error::{Error, Result};
use crate::normalize::{squared_normalized_distance, Normalizer};
use crate::problems::Problem;
use crate::record::{Counters, RunRecord, TrajectoryRow};
use crate::rng::RngStream;
use crate::scalarize::reference_gammas;
use crate::types::{Bounds, Individual, Population};
use crate::variation::{reproduce, select_parents, VariationConfig};
use crate::weights::{standard_vectors, VectorSet};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaConfig {
    pub n_evals: usize,
    /// `L = floor(l_ratio * mu)`.
    pub l_ratio: f64,
    /// Defaults to [`VariationConfig::standard`] for the problem dimension.
    pub variation: Option<VariationConfig>,
}

impl AdaConfig {
    pub fn new(n_evals: usize) -> Self {
        Self {
            n_evals,
            l_ratio: 0.1,
            variation: None,
        }
    }
}

/// How a child was handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Addition {
    /// `X` was empty.
    Explorer,
    /// `u` deleted at least one member of `X`.
    Winner,
    Rejected,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepOutcome {
    pub subproblem: usize,
    /// Positions of `X` in the population before deletion.
    pub neighborhood: Vec<usize>,
    pub deleted: usize,
    pub addition: Addition,
}

/// Positions of the members that are among the `l` nearest to `x` in the
/// normalized solution space and assigned to subproblem `j`, ascending.
/// Equal distances are ordered by position.
pub fn neighbors(pop: &Population, x: &[f64], j: usize, l: usize, bounds: &Bounds) -> Vec<usize> {
    let mu = pop.len();
    if l == 0 || mu == 0 {
        return Vec::new();
    }
    let mut out: Vec<usize> = if l >= mu {
        (0..mu).collect()
    } else {
        let mut d: Vec<(f64, usize)> = pop
            .members()
            .iter()
            .enumerate()
            .map(|(i, m)| (squared_normalized_distance(&m.x, x, bounds), i))
            .collect();
        d.select_nth_unstable_by(l - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        d[..l].iter().map(|p| p.1).collect()
    };
    out.retain(|&i| pop.get(i).subproblem == j);
    out.sort_unstable();
    out
}

/// Normalizer for `strategy` over the current members.
pub fn population_normalizer(strategy: &Strategy, pop: &Population) -> Normalizer {
    strategy.normalizer(pop.ideal(), pop.members().iter().map(|m| &m.f[..]))
}

pub struct AdaState<'p> {
    problem: &'p dyn Problem,
    strategy: Strategy,
    vectors: VectorSet,
    gammas: Vec<f64>,
    variation: VariationConfig,
    l_ratio: f64,
    pop: Population,
    t: usize,
    t_max: usize,
    counters: Counters,
    trajectory: Vec<TrajectoryRow>,
    rng: RngStream,
}

impl<'p> AdaState<'p> {
    /// Random initial population: member `i` on subproblem `i`.
    pub fn new(
        problem: &'p dyn Problem,
        strategy: Strategy,
        vectors: VectorSet,
        cfg: &AdaConfig,
        seed: u64,
    ) -> Result<Self> {
        let mut rng = RngStream::new(seed);
        let b = problem.bounds();
        let members = (0..vectors.len())
            .map(|i| {
                let x: Vec<f64> = (0..b.dim()).map(|k| rng.uniform_in(b.lower()[k], b.upper()[k])).collect();
                let f = problem.evaluate_unchecked(&x);
                Individual::new(x, f, i)
            })
            .collect();
        let n = vectors.len();
        Self::from_parts(problem, strategy, vectors, Population::from_members(members), n, cfg, rng)
    }

    /// State over an existing population that has already spent `t` evaluations.
    pub fn from_population(
        problem: &'p dyn Problem,
        strategy: Strategy,
        vectors: VectorSet,
        pop: Population,
        t: usize,
        cfg: &AdaConfig,
        seed: u64,
    ) -> Result<Self> {
        Self::from_parts(problem, strategy, vectors, pop, t, cfg, RngStream::new(seed))
    }

    fn from_parts(
        problem: &'p dyn Problem,
        strategy: Strategy,
        vectors: VectorSet,
        pop: Population,
        t: usize,
        cfg: &AdaConfig,
        rng: RngStream,
    ) -> Result<Self> {
        let n = vectors.len();
        if vectors.num_objectives() != problem.num_objectives() {
            return Err(Error::DimensionMismatch {
                expected: problem.num_objectives(),
                actual: vectors.num_objectives(),
            });
        }
        if cfg.n_evals < n {
            return Err(Error::InvalidParameter(format!(
                "n_evals = {} is below the initial population of {n}",
                cfg.n_evals
            )));
        }
        if !(0.0..=1.0).contains(&cfg.l_ratio) {
            return Err(Error::InvalidParameter(format!("l_ratio must lie in [0, 1], got {}", cfg.l_ratio)));
        }
        let occupancy = pop.occupancy(n);
        if let Some(j) = occupancy.iter().position(|&c| c == 0) {
            return Err(Error::InvalidParameter(format!("subproblem {j} has no member")));
        }
        if let Some(m) = pop.members().iter().find(|m| m.subproblem >= n) {
            return Err(Error::InvalidSubproblem {
                index: m.subproblem,
                count: n,
            });
        }
        let variation = cfg.variation.unwrap_or_else(|| VariationConfig::standard(problem.num_variables()));
        variation.validate()?;
        let gammas = reference_gammas(&vectors)?;
        Ok(Self {
            problem,
            strategy,
            vectors,
            gammas,
            variation,
            l_ratio: cfg.l_ratio,
            pop,
            t,
            t_max: cfg.n_evals,
            counters: Counters::default(),
            trajectory: Vec::new(),
            rng,
        })
    }

    pub fn population(&self) -> &Population {
        &self.pop
    }

    pub fn vectors(&self) -> &VectorSet {
        &self.vectors
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    pub fn evaluations(&self) -> usize {
        self.t
    }

    pub fn is_done(&self) -> bool {
        self.t >= self.t_max
    }

    pub fn num_subproblems(&self) -> usize {
        self.vectors.len()
    }

    pub fn trajectory(&self) -> &[TrajectoryRow] {
        &self.trajectory
    }

    /// Neighborhood size for the current population.
    pub fn neighborhood_size(&self) -> usize {
        (self.l_ratio * self.pop.len() as f64).floor() as usize
    }

    /// One full iteration: mating, variation, then [`AdaState::offer`].
    pub fn step(&mut self) -> Result<StepOutcome> {
        let (a, b) = select_parents(self.pop.len(), &mut self.rng)?;
        let child = reproduce(
            &self.pop.get(a).x,
            &self.pop.get(b).x,
            &self.variation,
            self.problem.bounds(),
            &mut self.rng,
        );
        self.offer(child)
    }

    /// Evaluates `x` and runs assignment, deletion and addition on it.
    pub fn offer(&mut self, x: Vec<f64>) -> Result<StepOutcome> {
        let f = self.problem.evaluate(&x)?.0;
        self.t += 1;
        self.pop.update_ideal(&f);

        let rows = self.pop.members().iter().map(|m| &m.f[..]).chain(std::iter::once(&f[..]));
        let norm = self.strategy.normalizer(self.pop.ideal(), rows);
        let fu = norm.apply(&f);
        let ctx = Context {
            vectors: &self.vectors,
            gammas: &self.gammas,
            t: self.t,
            t_max: self.t_max,
        };
        let j = self.strategy.assign(&fu, &ctx);
        let l = self.neighborhood_size();
        let neighborhood = neighbors(&self.pop, &x, j, l, self.problem.bounds());
        let doomed: Vec<usize> = neighborhood
            .iter()
            .copied()
            .filter(|&i| self.strategy.worse_than(&norm.apply(&self.pop.get(i).f), &fu, j, &ctx))
            .collect();

        let addition = if !doomed.is_empty() {
            Addition::Winner
        } else if neighborhood.is_empty() {
            Addition::Explorer
        } else {
            Addition::Rejected
        };
        self.pop.remove_many(&doomed);
        self.counters.deletions += doomed.len();
        match addition {
            Addition::Winner => self.counters.winner_adds += 1,
            Addition::Explorer => self.counters.explorer_adds += 1,
            Addition::Rejected => {}
        }
        if addition != Addition::Rejected {
            self.pop.push(Individual::new(x, f, j));
        }
        self.trajectory.push(TrajectoryRow {
            t: self.t,
            mu: self.pop.len(),
            explorer_adds: self.counters.explorer_adds,
            winner_adds: self.counters.winner_adds,
            deletions: self.counters.deletions,
        });
        Ok(StepOutcome {
            subproblem: j,
            neighborhood,
            deleted: doomed.len(),
            addition,
        })
    }

    pub fn into_record(self, seed: u64) -> RunRecord {
        RunRecord {
            algorithm: format!("{}-ADA", self.strategy.kind.name()),
            problem: self.problem.label(),
            seed,
            n_evals: self.t,
            num_subproblems: self.vectors.len(),
            population: self.pop.into_members(),
            trajectory: self.trajectory,
            counters: self.counters,
            archive: None,
        }
    }
}

/// Runs `kind` with ADA on the standard weight vectors for the problem's `M`.
pub fn run_ada(kind: Kind, problem: &dyn Problem, cfg: &AdaConfig, seed: u64) -> Result<RunRecord> {
    let vectors = standard_vectors(problem.num_objectives())?;
    run_ada_with(Strategy::new(kind), problem, vectors, cfg, seed)
}

pub fn run_ada_with(
    strategy: Strategy,
    problem: &dyn Problem,
    vectors: VectorSet,
    cfg: &AdaConfig,
    seed: u64,
) -> Result<RunRecord> {
    let mut state = AdaState::new(problem, strategy, vectors, cfg, seed)?;
    while !state.is_done() {
        state.step()?;
    }
    Ok(state.into_record(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{make_problem, ProblemInstance};
    use crate::weights::simplex_lattice;

    fn overlap_population() -> Population {
        // Subproblem 1 holds a, b, c; d sits on subproblem 2 right next to
        // the child; the others are far away.
        let at = |x: f64, y: f64, j: usize| Individual::new(vec![x, y], vec![0.0, 0.0], j);
        Population::from_members(vec![
            at(-15.0, -15.0, 0),
            at(9.0, 0.0, 1),  // a: on j but not among the 3 nearest
            at(0.5, 0.0, 1),  // b
            at(0.0, 0.6, 1),  // c
            at(0.3, 0.3, 2),  // d
            at(15.0, 15.0, 3),
            at(-15.0, 15.0, 0),
            at(15.0, -15.0, 2),
            at(-10.0, 0.0, 3),
            at(0.0, -12.0, 3),
        ])
    }

    #[test]
    fn neighborhood_is_intersection_of_nearest_and_subproblem() {
        let pop = overlap_population();
        let b = Bounds::uniform(2, -20.0, 20.0).unwrap();
        let u = [0.0, 0.0];
        assert_eq!(neighbors(&pop, &u, 1, 3, &b), vec![2, 3]);
        assert!(neighbors(&pop, &u, 1, 0, &b).is_empty());
        assert_eq!(neighbors(&pop, &u, 1, 10, &b), vec![1, 2, 3]);
        assert_eq!(neighbors(&pop, &u, 3, 10, &b), vec![5, 8, 9]);
    }

    #[test]
    fn neighborhood_ties_follow_position() {
        let at = |x: f64, j: usize| Individual::new(vec![x], vec![0.0], j);
        let pop = Population::from_members(vec![at(1.0, 0), at(-1.0, 1), at(1.0, 1), at(5.0, 1)]);
        let b = Bounds::uniform(1, -10.0, 10.0).unwrap();
        assert_eq!(neighbors(&pop, &[0.0], 1, 2, &b), vec![1]);
        assert_eq!(neighbors(&pop, &[0.0], 1, 3, &b), vec![1, 2]);
    }

    fn two_member_state(problem: &ProblemInstance, members: Vec<Individual>, l_ratio: f64) -> AdaState<'_> {
        let w = simplex_lattice(2, 1).unwrap();
        let cfg = AdaConfig {
            n_evals: 1000,
            l_ratio,
            variation: None,
        };
        AdaState::from_population(problem, Strategy::new(Kind::Agr), w, Population::from_members(members), 2, &cfg, 0)
            .unwrap()
    }

    fn member(p: &ProblemInstance, x: Vec<f64>, j: usize) -> Individual {
        let f = p.evaluate_unchecked(&x);
        Individual::new(x, f, j)
    }

    #[test]
    fn empty_neighborhood_adds_an_explorer() {
        let p = make_problem("SYM-PART1", 2, 2).unwrap();
        let members = vec![member(&p, vec![-10.0, 0.0], 0), member(&p, vec![10.0, 0.0], 1)];
        let mut s = two_member_state(&p, members, 0.0);
        let out = s.offer(vec![0.0, 0.0]).unwrap();
        assert_eq!(out.addition, Addition::Explorer);
        assert_eq!(s.population().len(), 3);
        assert_eq!(s.counters().explorer_adds, 1);
    }

    #[test]
    fn winner_replaces_and_loser_is_discarded() {
        // SYM-PART1 near the central tile: f = ((x1+1)^2 + x2^2, (x1-1)^2 + x2^2).
        let p = make_problem("SYM-PART1", 2, 2).unwrap();
        // Larger x2 is worse on both objectives; L = floor(1.0 * 2) = 2.
        let members = vec![member(&p, vec![0.0, 3.0], 0), member(&p, vec![0.0, 3.0], 1)];
        let mut s = two_member_state(&p, members.clone(), 1.0);
        let out = s.offer(vec![0.0, 0.5]).unwrap();
        assert_eq!(out.addition, Addition::Winner);
        assert_eq!(out.deleted, 1);
        assert_eq!(s.population().len(), 2);
        assert_eq!(s.counters().winner_adds, 1);
        assert_eq!(s.counters().deletions, 1);

        let mut s = two_member_state(&p, vec![member(&p, vec![0.0, 0.0], 0), member(&p, vec![0.0, 0.0], 1)], 1.0);
        let out = s.offer(vec![0.0, 1.5]).unwrap();
        assert_eq!(out.addition, Addition::Rejected);
        assert_eq!(s.population().len(), 2);
        assert_eq!(s.counters(), Counters::default());
    }

    #[test]
    fn bookkeeping_holds_for_every_strategy() {
        let p = make_problem("SYM-PART1", 2, 2).unwrap();
        for kind in Kind::ALL {
            let vectors = simplex_lattice(2, 19).unwrap();
            let n = vectors.len();
            let mut s = AdaState::new(&p, Strategy::new(kind), vectors, &AdaConfig::new(1500), 3).unwrap();
            while !s.is_done() {
                s.step().unwrap();
                let c = s.counters();
                let mu = s.population().len();
                assert_eq!(mu + c.deletions, n + c.explorer_adds + c.winner_adds);
                assert!(mu >= n);
                assert!(s.population().occupancy(n).iter().all(|&k| k >= 1));
            }
            assert_eq!(s.evaluations(), 1500);
            assert_eq!(s.trajectory().len(), 1500 - n);
        }
    }

    #[test]
    fn runs_are_reproducible() {
        let p = make_problem("Omni-test", 2, 2).unwrap();
        for kind in Kind::ALL {
            let cfg = AdaConfig::new(600);
            let a = run_ada(kind, &p, &cfg, 42).unwrap();
            let b = run_ada(kind, &p, &cfg, 42).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.n_evals, 600);
        }
    }

    #[test]
    fn rejects_mismatched_vectors() {
        let p = make_problem("Polygon", 3, 2).unwrap();
        let w = simplex_lattice(2, 5).unwrap();
        assert!(AdaState::new(&p, Strategy::new(Kind::Du), w, &AdaConfig::new(100), 0).is_err());
        let p2 = make_problem("SSUF1", 2, 2).unwrap();
        assert!(run_ada(Kind::Du, &p2, &AdaConfig::new(10), 0).is_err());
    }
}

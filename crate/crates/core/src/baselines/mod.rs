//! The six host algorithms in their original fixed-size form, plus the
//! unbounded external archive.

mod archive;
mod moead;
mod nsga3;
mod rvea;

pub use archive::UnboundedArchive;
pub use moead::{agr_replacement_size, MoeadDeConfig};

use serde::{Deserialize, Serialize};

use crate::ada::Kind;
use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::record::{Counters, RunRecord, TrajectoryRow};
use crate::rng::RngStream;
use crate::types::Individual;
use crate::variation::VariationConfig;
use crate::weights::{standard_vectors, VectorSet};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OriginalConfig {
    pub n_evals: usize,
    /// Keep an unbounded archive of every non-dominated solution evaluated.
    pub archive: bool,
    pub variation: Option<VariationConfig>,
    pub moead: MoeadDeConfig,
    /// RVEA adapts its reference vectors every `ceil(rvea_fr * G_max)` generations.
    pub rvea_fr: f64,
}

impl OriginalConfig {
    pub fn new(n_evals: usize) -> Self {
        Self {
            n_evals,
            archive: false,
            variation: None,
            moead: MoeadDeConfig::default(),
            rvea_fr: 0.1,
        }
    }
}

/// Evaluation budget, archive and trajectory shared by every original algorithm.
struct Budget<'p> {
    problem: &'p dyn Problem,
    variation: VariationConfig,
    rng: RngStream,
    t: usize,
    t_max: usize,
    archive: Option<UnboundedArchive>,
    trajectory: Vec<TrajectoryRow>,
}

impl<'p> Budget<'p> {
    fn new(problem: &'p dyn Problem, n: usize, cfg: &OriginalConfig, seed: u64) -> Result<Self> {
        if cfg.n_evals < n {
            return Err(Error::InvalidParameter(format!(
                "n_evals = {} is below the population size {n}",
                cfg.n_evals
            )));
        }
        let variation = cfg.variation.unwrap_or_else(|| VariationConfig::standard(problem.num_variables()));
        variation.validate()?;
        Ok(Self {
            problem,
            variation,
            rng: RngStream::new(seed),
            t: 0,
            t_max: cfg.n_evals,
            archive: cfg.archive.then(UnboundedArchive::default),
            trajectory: Vec::new(),
        })
    }

    fn remaining(&self) -> usize {
        self.t_max - self.t
    }

    fn evaluate(&mut self, x: Vec<f64>, subproblem: usize) -> Result<Individual> {
        let f = self.problem.evaluate(&x)?;
        self.t += 1;
        let ind = Individual::new(x, f, subproblem);
        if let Some(a) = &mut self.archive {
            a.update(&ind);
        }
        Ok(ind)
    }

    /// `n` uniform random members, member `i` on subproblem `i`.
    fn initial(&mut self, n: usize) -> Result<Vec<Individual>> {
        let b = self.problem.bounds().clone();
        (0..n)
            .map(|i| {
                let x: Vec<f64> = (0..b.dim()).map(|k| self.rng.uniform_in(b.lower()[k], b.upper()[k])).collect();
                self.evaluate(x, i)
            })
            .collect()
    }

    fn log(&mut self, mu: usize) {
        self.trajectory.push(TrajectoryRow {
            t: self.t,
            mu,
            explorer_adds: 0,
            winner_adds: 0,
            deletions: 0,
        });
    }

    fn finish(self, kind: Kind, n: usize, population: Vec<Individual>, seed: u64) -> RunRecord {
        let algorithm = if self.archive.is_some() {
            format!("{}-UEA", kind.name())
        } else {
            kind.name().to_string()
        };
        RunRecord {
            algorithm,
            problem: self.problem.label(),
            seed,
            n_evals: self.t,
            num_subproblems: n,
            population,
            trajectory: self.trajectory,
            counters: Counters::default(),
            archive: self.archive.map(UnboundedArchive::into_members),
        }
    }
}

/// Runs the original form of `kind` on the standard weight vectors.
pub fn run_original(kind: Kind, problem: &dyn Problem, cfg: &OriginalConfig, seed: u64) -> Result<RunRecord> {
    let vectors = standard_vectors(problem.num_objectives())?;
    run_original_with(kind, problem, vectors, cfg, seed)
}

pub fn run_original_with(
    kind: Kind,
    problem: &dyn Problem,
    vectors: VectorSet,
    cfg: &OriginalConfig,
    seed: u64,
) -> Result<RunRecord> {
    if vectors.num_objectives() != problem.num_objectives() {
        return Err(Error::DimensionMismatch {
            expected: problem.num_objectives(),
            actual: vectors.num_objectives(),
        });
    }
    if vectors.len() < 2 {
        return Err(Error::InvalidParameter("need at least two weight vectors".into()));
    }
    let n = vectors.len();
    let mut budget = Budget::new(problem, n, cfg, seed)?;
    let population = match kind {
        Kind::Agr | Kind::Du | Kind::Emoead => moead::run(kind, &vectors, &cfg.moead, &mut budget)?,
        Kind::Nsga3 | Kind::Theta => nsga3::run(kind, &vectors, &mut budget)?,
        Kind::Rvea => rvea::run(&vectors, cfg.rvea_fr, &mut budget)?,
    };
    Ok(budget.finish(kind, n, population, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate::igd_plus;
    use crate::problems::make_problem;
    use crate::types::Bounds;
    use crate::weights::simplex_lattice;

    /// Two-variable ZDT1: a single convex front at `x2 = 0`.
    struct Zdt1 {
        bounds: Bounds,
    }

    impl Problem for Zdt1 {
        fn label(&self) -> String {
            "ZDT1".into()
        }

        fn num_objectives(&self) -> usize {
            2
        }

        fn bounds(&self) -> &Bounds {
            &self.bounds
        }

        fn evaluate_unchecked(&self, x: &[f64]) -> Vec<f64> {
            let g = 1.0 + 9.0 * x[1];
            vec![x[0], g * (1.0 - (x[0] / g).sqrt())]
        }
    }

    #[test]
    fn every_original_keeps_mu_fixed() {
        let p = make_problem("SYM-PART1", 2, 2).unwrap();
        for kind in Kind::ALL {
            let w = simplex_lattice(2, 19).unwrap();
            let rec = run_original_with(kind, &p, w, &OriginalConfig::new(1010), 4).unwrap();
            assert_eq!(rec.population.len(), 20, "{kind}");
            assert_eq!(rec.n_evals, 1010);
            assert!(rec.trajectory.iter().all(|r| r.mu == 20));
            assert!(rec.population.iter().all(|m| m.subproblem < 20));
        }
    }

    #[test]
    fn originals_converge_on_a_unimodal_problem() {
        let p = Zdt1 {
            bounds: Bounds::uniform(2, 0.0, 1.0).unwrap(),
        };
        let front: Vec<Vec<f64>> = (0..500)
            .map(|i| {
                let f1 = i as f64 / 499.0;
                vec![f1, 1.0 - f1.sqrt()]
            })
            .collect();
        let score = |kind: Kind| {
            let rec = run_original(kind, &p, &OriginalConfig::new(10_000), 1).unwrap();
            let fs: Vec<Vec<f64>> = rec.population.iter().map(|m| m.f.0.clone()).collect();
            igd_plus(&fs, &front).unwrap()
        };
        let reference = score(Kind::Nsga3);
        assert!(reference < 0.05, "NSGA-III IGD+ {reference}");
        for kind in Kind::ALL {
            let s = score(kind);
            assert!(s <= 2.0 * reference, "{kind}: {s} vs NSGA-III {reference}");
        }
    }

    #[test]
    fn archive_tracks_every_evaluation() {
        let p = make_problem("Two-On-One", 2, 2).unwrap();
        let mut cfg = OriginalConfig::new(600);
        cfg.archive = true;
        let rec = run_original(Kind::Du, &p, &cfg, 2).unwrap();
        assert_eq!(rec.algorithm, "MOEA/D-DU-UEA");
        let archive = rec.archive.unwrap();
        let fs: Vec<&[f64]> = archive.iter().map(|m| &m.f[..]).collect();
        assert_eq!(crate::pareto::non_dominated_indices(&fs).len(), fs.len());
        // Every final member is either in the archive or dominated by it.
        for m in &rec.population {
            assert!(archive.iter().any(|a| a.f == m.f || crate::pareto::dominates(&a.f, &m.f)));
        }
    }

    #[test]
    fn originals_are_reproducible() {
        let p = make_problem("Polygon", 3, 2).unwrap();
        for kind in Kind::ALL {
            let cfg = OriginalConfig::new(500);
            assert_eq!(run_original(kind, &p, &cfg, 3).unwrap(), run_original(kind, &p, &cfg, 3).unwrap());
        }
    }
}

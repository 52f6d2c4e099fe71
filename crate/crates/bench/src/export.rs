//! Decision-making exports and plot data.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use mmoada::ada::Strategy;
use mmoada::evaluate::{select_primary, select_secondary};
use mmoada::record::{write_individuals, write_trajectory, RunRecord, TrajectoryRow};
use mmoada::types::Population;
use mmoada::weights::standard_vectors;
use mmoada::Error;

use crate::campaign::{completed_cells, load_campaign, provenance, read_indicators, seed_range, INDICATORS_FILE};
use crate::config::{AlgorithmSpec, Variant};

pub const PRIMARY_FILE: &str = "a_primary.csv";
pub const PLOTS_DIR: &str = "plots";

/// The header comment of a run directory, e.g. `config=... seed=...`.
pub fn run_provenance(run: &Path) -> Result<String> {
    let f = File::open(run.join("meta.csv")).with_context(|| format!("{} is not a run directory", run.display()))?;
    let first = BufReader::new(f).lines().next().transpose()?.unwrap_or_default();
    Ok(first.strip_prefix("# ").map(str::to_string).unwrap_or_else(|| provenance("unknown", "unknown")))
}

/// Writes `a_primary.csv` and `a_secondary_<j>.csv` for an ADA run into `out`.
pub fn export_decision(run: &Path, j: usize, out: &Path) -> Result<(PathBuf, PathBuf)> {
    let rec = RunRecord::read_dir(run)?;
    let spec = AlgorithmSpec::from_name(&rec.algorithm).with_context(|| format!("unknown algorithm {:?}", rec.algorithm))?;
    if spec.variant != Variant::Ada {
        bail!("{} is not an ADA run; decision export needs subproblem populations", rec.algorithm);
    }
    if j >= rec.num_subproblems {
        return Err(Error::InvalidSubproblem {
            index: j,
            count: rec.num_subproblems,
        }
        .into());
    }
    let m = rec.population.first().map(|p| p.f.len()).context("empty population")?;
    let vectors = standard_vectors(m)?;
    if vectors.len() != rec.num_subproblems {
        bail!("run has {} subproblems but the standard set for M={m} has {}", rec.num_subproblems, vectors.len());
    }
    let comment = run_provenance(run)?;
    let pop = Population::from_members(rec.population);
    let primary = select_primary(&pop, &Strategy::new(spec.kind), &vectors, rec.n_evals, rec.n_evals)?;
    let secondary = select_secondary(&pop, j);
    fs::create_dir_all(out)?;
    let (pp, sp) = (out.join(PRIMARY_FILE), out.join(format!("a_secondary_{j}.csv")));
    write_individuals(BufWriter::new(File::create(&pp)?), &primary, &comment)?;
    write_individuals(BufWriter::new(File::create(&sp)?), &secondary, &comment)?;
    Ok((pp, sp))
}

/// Scatter (`x1..xD,f1..fM,subproblem`) and trajectory CSVs of one run,
/// written under `<run>/plots`.
pub fn export_run_plots(run: &Path) -> Result<PathBuf> {
    let rec = RunRecord::read_dir(run)?;
    let comment = run_provenance(run)?;
    let dir = run.join(PLOTS_DIR);
    fs::create_dir_all(&dir)?;
    write_individuals(BufWriter::new(File::create(dir.join("scatter.csv"))?), &rec.population, &comment)?;
    if let Some(archive) = &rec.archive {
        write_individuals(BufWriter::new(File::create(dir.join("archive_scatter.csv"))?), archive, &comment)?;
    }
    write_trajectory(BufWriter::new(File::create(dir.join("trajectory.csv"))?), &rec.trajectory, &comment)?;
    Ok(dir)
}

fn median_usize(v: &mut [usize]) -> usize {
    v.sort_unstable();
    v[(v.len() - 1) / 2]
}

fn median_f64(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Row-wise lower medians of several trajectories, truncated to the shortest.
pub fn median_trajectory(runs: &[Vec<TrajectoryRow>]) -> Vec<TrajectoryRow> {
    let len = runs.iter().map(Vec::len).min().unwrap_or(0);
    (0..len)
        .map(|i| {
            let col = |f: fn(&TrajectoryRow) -> usize| median_usize(&mut runs.iter().map(|r| f(&r[i])).collect::<Vec<_>>());
            TrajectoryRow {
                t: col(|r| r.t),
                mu: col(|r| r.mu),
                explorer_adds: col(|r| r.explorer_adds),
                winner_adds: col(|r| r.winner_adds),
                deletions: col(|r| r.deletions),
            }
        })
        .collect()
}

/// Per-run plot data for every completed cell, per-seed median trajectories
/// under `<root>/plots/<algorithm>/<problem>.csv`, and indicator medians.
pub fn export_campaign_plots(root: &Path) -> Result<PathBuf> {
    let cfg = load_campaign(root)?;
    let cells = completed_cells(root, &cfg)?;
    let out = root.join(PLOTS_DIR);
    fs::create_dir_all(&out)?;
    let comment = provenance(&cfg.hash(), &seed_range(&cfg));
    for algorithm in &cfg.algorithms {
        let mut by_problem: Vec<(String, Vec<Vec<TrajectoryRow>>)> = Vec::new();
        for (a, problem, _, dir) in &cells {
            if a != algorithm {
                continue;
            }
            export_run_plots(dir)?;
            let rec = RunRecord::read_dir(dir)?;
            let label = problem.label();
            match by_problem.iter_mut().find(|(l, _)| *l == label) {
                Some((_, v)) => v.push(rec.trajectory),
                None => by_problem.push((label, vec![rec.trajectory])),
            }
        }
        let adir = out.join(algorithm.id());
        fs::create_dir_all(&adir)?;
        for (label, runs) in by_problem {
            let path = adir.join(format!("{}.csv", label.replace(|c: char| !c.is_ascii_alphanumeric() && c != '-', "_")));
            write_trajectory(BufWriter::new(File::create(path)?), &median_trajectory(&runs), &comment)?;
        }
    }
    let rows = read_indicators(&root.join(INDICATORS_FILE))?;
    let mut groups: Vec<((String, String), (Vec<f64>, Vec<f64>))> = Vec::new();
    for r in rows {
        let key = (r.algorithm.clone(), r.problem.clone());
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => {
                v.0.push(r.igd_plus);
                v.1.push(r.igdx);
            }
            None => groups.push((key, (vec![r.igd_plus], vec![r.igdx]))),
        }
    }
    let mut f = BufWriter::new(File::create(out.join("indicator_medians.csv"))?);
    writeln!(f, "# {comment}")?;
    let mut w = csv::Writer::from_writer(f);
    w.write_record(["algorithm", "problem", "runs", "median_igd_plus", "median_igdx"])?;
    for ((a, p), (mut plus, mut x)) in groups {
        let n = plus.len().to_string();
        w.write_record([a, p, n, median_f64(&mut plus).to_string(), median_f64(&mut x).to_string()])?;
    }
    w.flush()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(t: usize, mu: usize) -> TrajectoryRow {
        TrajectoryRow {
            t,
            mu,
            explorer_adds: mu,
            winner_adds: 0,
            deletions: 0,
        }
    }

    #[test]
    fn median_trajectory_takes_rowwise_medians() {
        let runs = vec![
            vec![row(1, 10), row(2, 30)],
            vec![row(1, 12), row(2, 10), row(3, 9)],
            vec![row(1, 11), row(2, 20)],
        ];
        let m = median_trajectory(&runs);
        assert_eq!(m, vec![row(1, 11), row(2, 20)]);
    }
}

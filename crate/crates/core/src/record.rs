//! Seeded run output and its CSV layout.
//!
//! A record directory holds `population.csv` (`x1..xD,f1..fM,subproblem`),
//! `trajectory.csv` (`t,mu,explorer_adds,winner_adds,deletions`),
//! `meta.csv` (`key,value`) and, when an archive was kept, `archive.csv` in
//! the population layout. Every file may start with `# ` comment lines.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::format_real;
use crate::types::Individual;

/// Running totals of the addition and deletion operations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub explorer_adds: usize,
    pub winner_adds: usize,
    pub deletions: usize,
}

/// One row per iteration; counters are cumulative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    /// Function evaluations spent so far.
    pub t: usize,
    pub mu: usize,
    pub explorer_adds: usize,
    pub winner_adds: usize,
    pub deletions: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub seed: u64,
    pub n_evals: usize,
    pub num_subproblems: usize,
    pub population: Vec<Individual>,
    pub trajectory: Vec<TrajectoryRow>,
    pub counters: Counters,
    pub archive: Option<Vec<Individual>>,
}

impl RunRecord {
    pub fn final_mu(&self) -> usize {
        self.population.len()
    }

    pub fn write_dir(&self, dir: &Path, comment: &str) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        write_individuals(File::create(dir.join("population.csv"))?, &self.population, comment)?;
        if let Some(archive) = &self.archive {
            write_individuals(File::create(dir.join("archive.csv"))?, archive, comment)?;
        }
        write_trajectory(File::create(dir.join("trajectory.csv"))?, &self.trajectory, comment)?;

        let mut out = BufWriter::new(File::create(dir.join("meta.csv"))?);
        write_comment(&mut out, comment)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["key", "value"])?;
        let c = &self.counters;
        for (k, v) in [
            ("algorithm", self.algorithm.clone()),
            ("problem", self.problem.clone()),
            ("seed", self.seed.to_string()),
            ("n_evals", self.n_evals.to_string()),
            ("num_subproblems", self.num_subproblems.to_string()),
            ("explorer_adds", c.explorer_adds.to_string()),
            ("winner_adds", c.winner_adds.to_string()),
            ("deletions", c.deletions.to_string()),
        ] {
            w.write_record([k, v.as_str()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_dir(dir: &Path) -> Result<Self> {
        let mut meta = std::collections::HashMap::new();
        let mut r = reader(File::open(dir.join("meta.csv"))?);
        for rec in r.records() {
            let rec = rec?;
            meta.insert(rec[0].to_string(), rec[1].to_string());
        }
        let get = |k: &str| meta.get(k).cloned().ok_or_else(|| Error::Malformed(format!("meta.csv lacks {k}")));
        let num = |k: &str| -> Result<usize> { get(k)?.parse().map_err(|_| Error::Malformed(format!("bad {k}"))) };
        let archive_path = dir.join("archive.csv");
        let archive = if archive_path.exists() {
            Some(read_individuals(File::open(archive_path)?)?)
        } else {
            None
        };
        Ok(Self {
            algorithm: get("algorithm")?,
            problem: get("problem")?,
            seed: get("seed")?.parse().map_err(|_| Error::Malformed("bad seed".into()))?,
            n_evals: num("n_evals")?,
            num_subproblems: num("num_subproblems")?,
            population: read_individuals(File::open(dir.join("population.csv"))?)?,
            trajectory: read_trajectory(File::open(dir.join("trajectory.csv"))?)?,
            counters: Counters {
                explorer_adds: num("explorer_adds")?,
                winner_adds: num("winner_adds")?,
                deletions: num("deletions")?,
            },
            archive,
        })
    }
}

fn write_comment<W: Write>(out: &mut W, comment: &str) -> Result<()> {
    for line in comment.lines() {
        writeln!(out, "# {line}")?;
    }
    Ok(())
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input)
}

/// Writes individuals as `x1..xD,f1..fM,subproblem`.
pub fn write_individuals<W: Write>(out: W, members: &[Individual], comment: &str) -> Result<()> {
    let mut out = BufWriter::new(out);
    write_comment(&mut out, comment)?;
    let d = members.first().map_or(0, |m| m.x.len());
    let m = members.first().map_or(0, |m| m.f.len());
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = (1..=d).map(|j| format!("x{j}")).collect();
    header.extend((1..=m).map(|i| format!("f{i}")));
    header.push("subproblem".into());
    w.write_record(&header)?;
    for ind in members {
        let mut row: Vec<String> = ind.x.iter().chain(ind.f.iter()).map(|v| format_real(*v)).collect();
        row.push(ind.subproblem.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_individuals<R: Read>(input: R) -> Result<Vec<Individual>> {
    let mut r = reader(input);
    let header = r.headers()?.clone();
    let d = header.iter().filter(|h| h.starts_with('x')).count();
    let m = header.iter().filter(|h| h.starts_with('f')).count();
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        if rec.len() != d + m + 1 {
            return Err(Error::Malformed(format!("row has {} fields, expected {}", rec.len(), d + m + 1)));
        }
        let vals: Vec<f64> = rec
            .iter()
            .take(d + m)
            .map(|s| s.parse::<f64>().map_err(|e| Error::Malformed(e.to_string())))
            .collect::<Result<_>>()?;
        let j = rec[d + m].parse::<usize>().map_err(|e| Error::Malformed(e.to_string()))?;
        out.push(Individual::new(vals[..d].to_vec(), vals[d..].to_vec(), j));
    }
    Ok(out)
}

pub fn write_trajectory<W: Write>(out: W, rows: &[TrajectoryRow], comment: &str) -> Result<()> {
    let mut out = BufWriter::new(out);
    write_comment(&mut out, comment)?;
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(["t", "mu", "explorer_adds", "winner_adds", "deletions"])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trajectory<R: Read>(input: R) -> Result<Vec<TrajectoryRow>> {
    let mut r = reader(input);
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

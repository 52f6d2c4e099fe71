//! Campaign execution: one cell per (algorithm, problem, seed), each written
//! to its own directory and skipped on rerun once complete.

use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use mmoada::ada::{run_ada, AdaConfig};
use mmoada::baselines::{run_original, OriginalConfig};
use mmoada::evaluate::{aps, igd_plus, igdx, select_tertiary, ScoreTable};
use mmoada::problems::{build_reference_set, ProblemInstance, ReferenceSet};
use mmoada::record::RunRecord;
use mmoada::{Individual, RngStream};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{AlgorithmSpec, ExperimentConfig, ProblemSpec, Variant};

/// Reference sets sample this many Pareto optimal points and keep `REFERENCE_KEEP`.
pub const REFERENCE_POOL: usize = 10_000;
pub const REFERENCE_KEEP: usize = 5_000;
pub const REFERENCE_SEED: u64 = 1;

/// Worker count from this variable; all cores when unset.
pub const WORKERS_ENV: &str = "MMOADA_WORKERS";

pub const CONFIG_FILE: &str = "config.toml";
pub const INDICATORS_FILE: &str = "indicators.csv";
pub const APS_FILE: &str = "aps.csv";
pub const FAILURES_FILE: &str = "failures.csv";
const DONE_FILE: &str = "done";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndicatorRow {
    pub algorithm: String,
    pub problem: String,
    pub seed: u64,
    pub igd_plus: f64,
    pub igdx: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellFailure {
    pub algorithm: String,
    pub problem: String,
    pub seed: u64,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct CampaignSummary {
    pub dir: PathBuf,
    pub hash: String,
    pub computed: usize,
    pub skipped: usize,
    pub failures: Vec<CellFailure>,
    /// `None` when the campaign is too small to rank (fewer than two
    /// algorithms or runs) or some cell failed.
    pub aps: Option<ScoreTable>,
}

pub fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => {
            let n: usize = v.trim().parse().with_context(|| format!("{WORKERS_ENV}={v:?} is not a count"))?;
            if n == 0 {
                bail!("{WORKERS_ENV} must be positive");
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

/// `# config=<hash> seed=<seed>`, minus the leading `# `.
pub fn provenance(hash: &str, seed: &str) -> String {
    format!("config={hash} seed={seed}")
}

/// Seed label of campaign-wide files.
pub fn seed_range(cfg: &ExperimentConfig) -> String {
    format!("{}..={}", cfg.base_seed, cfg.base_seed + cfg.runs as u64 - 1)
}

fn slug(label: &str) -> String {
    label.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

pub fn cell_dir(root: &Path, algorithm: &AlgorithmSpec, problem: &ProblemInstance, seed: u64) -> PathBuf {
    root.join("runs").join(algorithm.id()).join(slug(&problem.label())).join(format!("seed-{seed}"))
}

fn reference_path(root: &Path, problem: &ProblemInstance) -> PathBuf {
    root.join("reference").join(format!("{}.csv", slug(&problem.label())))
}

/// Loads the cached reference set of `problem`, building it on first use.
pub fn reference_set(root: &Path, problem: &ProblemInstance) -> Result<ReferenceSet> {
    let path = reference_path(root, problem);
    if path.exists() {
        return Ok(ReferenceSet::read_csv(File::open(&path)?)?);
    }
    let mut rng = RngStream::new(REFERENCE_SEED);
    let set = build_reference_set(problem, REFERENCE_POOL, REFERENCE_KEEP, &mut rng)?;
    fs::create_dir_all(path.parent().expect("reference dir"))?;
    let comment = format!(
        "reference set of {}: {REFERENCE_KEEP} of {REFERENCE_POOL} Pareto optimal samples, seed={REFERENCE_SEED}",
        problem.label()
    );
    set.write_csv(BufWriter::new(File::create(&path)?), &comment)?;
    Ok(set)
}

/// Executes one cell.
pub fn run_cell(cfg: &ExperimentConfig, algorithm: &AlgorithmSpec, problem: &ProblemInstance, seed: u64) -> Result<RunRecord> {
    let rec = match algorithm.variant {
        Variant::Ada => {
            let mut c = AdaConfig::new(cfg.n_evals);
            c.l_ratio = cfg.l_ratio;
            run_ada(algorithm.kind, problem, &c, seed)?
        }
        Variant::Original | Variant::Archive => {
            let mut c = OriginalConfig::new(cfg.n_evals);
            c.archive = algorithm.variant == Variant::Archive;
            run_original(algorithm.kind, problem, &c, seed)?
        }
    };
    Ok(rec)
}

/// Members scored for a record: the `N`-member greedy max-min tertiary
/// subset for ADA and archive runs, the final population otherwise.
pub fn scored_members(rec: &RunRecord, problem: &ProblemInstance) -> Vec<Individual> {
    let pool = match (&rec.archive, rec.algorithm.ends_with("-ADA")) {
        (Some(archive), _) => archive,
        (None, true) => &rec.population,
        (None, false) => return rec.population.clone(),
    };
    let mut rng = RngStream::new(rec.seed);
    select_tertiary(pool, rec.num_subproblems, problem.bounds(), &mut rng).members
}

pub fn indicators(rec: &RunRecord, problem: &ProblemInstance, reference: &ReferenceSet) -> Result<IndicatorRow> {
    let members = scored_members(rec, problem);
    let fs: Vec<&[f64]> = members.iter().map(|m| &m.f[..]).collect();
    let xs: Vec<&[f64]> = members.iter().map(|m| &m.x[..]).collect();
    let rf: Vec<&[f64]> = reference.objectives.iter().map(|f| &f[..]).collect();
    let rx: Vec<&[f64]> = reference.solutions.iter().map(|x| &x[..]).collect();
    Ok(IndicatorRow {
        algorithm: rec.algorithm.clone(),
        problem: rec.problem.clone(),
        seed: rec.seed,
        igd_plus: igd_plus(&fs, &rf)?,
        igdx: igdx(&xs, &rx)?,
    })
}

fn write_rows<T: Serialize>(path: &Path, rows: &[T], comment: &str, header: &[&str]) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "# {comment}")?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_indicators(path: &Path, rows: &[IndicatorRow], comment: &str) -> Result<()> {
    write_rows(path, rows, comment, &["algorithm", "problem", "seed", "igd_plus", "igdx"])
}

pub fn read_indicators(path: &Path) -> Result<Vec<IndicatorRow>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path)?;
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

struct Cell<'a> {
    algorithm: &'a AlgorithmSpec,
    problem: &'a ProblemInstance,
    seed: u64,
}

enum CellOutcome {
    Computed(IndicatorRow),
    Skipped(IndicatorRow),
    Failed(CellFailure),
}

fn execute(cfg: &ExperimentConfig, hash: &str, root: &Path, cell: &Cell<'_>, reference: &ReferenceSet) -> CellOutcome {
    let dir = cell_dir(root, cell.algorithm, cell.problem, cell.seed);
    let done = dir.join(DONE_FILE);
    if fs::read_to_string(&done).is_ok_and(|h| h.trim() == hash) {
        if let Ok(mut rows) = read_indicators(&dir.join(INDICATORS_FILE)) {
            if rows.len() == 1 {
                return CellOutcome::Skipped(rows.remove(0));
            }
        }
    }
    let attempt = || -> Result<IndicatorRow> {
        if dir.exists() {
            fs::remove_dir_all(&dir)?;
        }
        let rec = panic::catch_unwind(AssertUnwindSafe(|| run_cell(cfg, cell.algorithm, cell.problem, cell.seed)))
            .map_err(|e| anyhow!("run panicked: {}", panic_message(&e)))??;
        let comment = provenance(hash, &cell.seed.to_string());
        rec.write_dir(&dir, &comment)?;
        let row = indicators(&rec, cell.problem, reference)?;
        write_indicators(&dir.join(INDICATORS_FILE), std::slice::from_ref(&row), &comment)?;
        fs::write(&done, format!("{hash}\n"))?;
        Ok(row)
    };
    match attempt() {
        Ok(row) => CellOutcome::Computed(row),
        Err(e) => {
            let message = format!("{e:#}");
            // Best effort: the failure is also reported in the summary.
            let _ = fs::create_dir_all(&dir).and_then(|_| fs::write(dir.join("error.txt"), format!("{message}\n")));
            CellOutcome::Failed(CellFailure {
                algorithm: cell.algorithm.name(),
                problem: cell.problem.label(),
                seed: cell.seed,
                message,
            })
        }
    }
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}

fn instances(problems: &[ProblemSpec]) -> Result<Vec<ProblemInstance>> {
    problems.iter().map(ProblemSpec::instance).collect()
}

/// Runs every cell of `cfg` into `cfg.output`, using up to `workers` threads.
pub fn run_campaign_with(cfg: &ExperimentConfig, workers: Option<usize>) -> Result<CampaignSummary> {
    cfg.validate()?;
    let root = cfg.output.clone();
    let hash = cfg.hash();
    fs::create_dir_all(&root).with_context(|| format!("creating {}", root.display()))?;
    fs::write(root.join(CONFIG_FILE), format!("# config={hash}\n{}", cfg.canonical()))?;

    let problems = instances(&cfg.problems)?;
    let references: Vec<ReferenceSet> = problems.iter().map(|p| reference_set(&root, p)).collect::<Result<_>>()?;
    let mut cells = Vec::new();
    for algorithm in &cfg.algorithms {
        for (pi, problem) in problems.iter().enumerate() {
            for seed in cfg.seeds() {
                cells.push((pi, Cell { algorithm, problem, seed }));
            }
        }
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let outcomes: Vec<CellOutcome> =
        pool.install(|| cells.par_iter().map(|(pi, cell)| execute(cfg, &hash, &root, cell, &references[*pi])).collect());

    let (mut rows, mut failures) = (Vec::new(), Vec::new());
    let (mut computed, mut skipped) = (0, 0);
    for o in outcomes {
        match o {
            CellOutcome::Computed(r) => {
                computed += 1;
                rows.push(r);
            }
            CellOutcome::Skipped(r) => {
                skipped += 1;
                rows.push(r);
            }
            CellOutcome::Failed(f) => failures.push(f),
        }
    }
    let comment = provenance(&hash, &seed_range(cfg));
    write_indicators(&root.join(INDICATORS_FILE), &rows, &comment)?;
    write_failures(&root.join(FAILURES_FILE), &failures, &comment)?;
    let table = if failures.is_empty() { write_aps(&root, cfg, &rows)? } else { None };
    Ok(CampaignSummary {
        dir: root,
        hash,
        computed,
        skipped,
        failures,
        aps: table,
    })
}

pub fn run_campaign(cfg: &ExperimentConfig) -> Result<CampaignSummary> {
    run_campaign_with(cfg, workers_from_env()?)
}

fn write_failures(path: &Path, failures: &[CellFailure], comment: &str) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "# {comment}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["algorithm", "problem", "seed", "message"])?;
    for f in failures {
        w.write_record([f.algorithm.as_str(), f.problem.as_str(), &f.seed.to_string(), f.message.as_str()])?;
    }
    w.flush()?;
    Ok(())
}

/// APS over both indicators, or `None` if the rows cannot be ranked.
pub fn score(cfg: &ExperimentConfig, rows: &[IndicatorRow]) -> Result<Option<(ScoreTable, ScoreTable)>> {
    if cfg.algorithms.len() < 2 || cfg.runs < 2 {
        return Ok(None);
    }
    let algorithms: Vec<String> = cfg.algorithms.iter().map(AlgorithmSpec::name).collect();
    let problems: Vec<String> = instances(&cfg.problems)?.iter().map(ProblemInstance::label).collect();
    let mut by_cell: HashMap<(&str, &str), (Vec<f64>, Vec<f64>)> = HashMap::new();
    for r in rows {
        let e = by_cell.entry((r.algorithm.as_str(), r.problem.as_str())).or_default();
        e.0.push(r.igd_plus);
        e.1.push(r.igdx);
    }
    let mut plus = Vec::new();
    let mut x = Vec::new();
    for p in &problems {
        let mut gp = Vec::new();
        let mut gx = Vec::new();
        for a in &algorithms {
            let (vp, vx) = by_cell
                .get(&(a.as_str(), p.as_str()))
                .with_context(|| format!("no indicator rows for {a} on {p}"))?;
            gp.push(vp.clone());
            gx.push(vx.clone());
        }
        plus.push(gp);
        x.push(gx);
    }
    Ok(Some((
        aps(&algorithms, &problems, &plus, cfg.alpha)?,
        aps(&algorithms, &problems, &x, cfg.alpha)?,
    )))
}

/// Writes `aps.csv`: `algorithm,aps_igdplus,aps_igdx,rank`, ranked by IGDX APS.
pub fn write_aps(root: &Path, cfg: &ExperimentConfig, rows: &[IndicatorRow]) -> Result<Option<ScoreTable>> {
    let Some((plus, x)) = score(cfg, rows)? else {
        return Ok(None);
    };
    let ranks = x.ranks();
    let mut out = BufWriter::new(File::create(root.join(APS_FILE))?);
    writeln!(out, "# {}", provenance(&cfg.hash(), &seed_range(cfg)))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["algorithm", "aps_igdplus", "aps_igdx", "rank"])?;
    for (i, a) in x.algorithms.iter().enumerate() {
        w.write_record([a.clone(), plus.aps[i].to_string(), x.aps[i].to_string(), ranks[i].to_string()])?;
    }
    w.flush()?;
    Ok(Some(x))
}

/// Reads the campaign's stored config back.
pub fn load_campaign(root: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(root.join(CONFIG_FILE)).with_context(|| format!("{} is not a campaign directory", root.display()))?;
    let mut cfg = ExperimentConfig::from_toml(&text)?;
    cfg.output = root.to_path_buf();
    Ok(cfg)
}

/// Recomputes `indicators.csv` from the stored run records.
pub fn recompute_indicators(root: &Path) -> Result<Vec<IndicatorRow>> {
    let cfg = load_campaign(root)?;
    let problems = instances(&cfg.problems)?;
    let mut rows = Vec::new();
    for algorithm in &cfg.algorithms {
        for problem in &problems {
            let reference = reference_set(root, problem)?;
            for seed in cfg.seeds() {
                let dir = cell_dir(root, algorithm, problem, seed);
                if !dir.join(DONE_FILE).exists() {
                    continue;
                }
                let rec = RunRecord::read_dir(&dir)?;
                rows.push(indicators(&rec, problem, &reference)?);
            }
        }
    }
    write_indicators(&root.join(INDICATORS_FILE), &rows, &provenance(&cfg.hash(), &seed_range(&cfg)))?;
    Ok(rows)
}

/// Recomputes `aps.csv` from `indicators.csv`.
pub fn recompute_aps(root: &Path) -> Result<ScoreTable> {
    let cfg = load_campaign(root)?;
    let rows = read_indicators(&root.join(INDICATORS_FILE))?;
    write_aps(root, &cfg, &rows)?.context("APS needs at least two algorithms and two runs")
}

/// Every completed cell of a campaign.
pub fn completed_cells(root: &Path, cfg: &ExperimentConfig) -> Result<Vec<(AlgorithmSpec, ProblemInstance, u64, PathBuf)>> {
    let mut out = Vec::new();
    for algorithm in &cfg.algorithms {
        for problem in instances(&cfg.problems)? {
            for seed in cfg.seeds() {
                let dir = cell_dir(root, algorithm, &problem, seed);
                if dir.join(DONE_FILE).exists() {
                    out.push((*algorithm, problem.clone(), seed, dir));
                }
            }
        }
    }
    Ok(out)
}

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use mmoada_bench::campaign::{recompute_aps, recompute_indicators};
use mmoada_bench::export::{export_campaign_plots, export_decision, export_run_plots};
use mmoada_bench::{run_campaign, ExperimentConfig};

#[derive(Parser)]
#[command(name = "mmoada", version, about = "Multi-modal decomposition EA campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every cell of a campaign config (worker count from MMOADA_WORKERS).
    Run { config: PathBuf },
    /// Recompute indicators.csv from the stored run records.
    Indicators { dir: PathBuf },
    /// Recompute aps.csv from indicators.csv.
    Aps { dir: PathBuf },
    /// Write a_primary.csv and a_secondary_<j>.csv for one ADA run.
    ExportDecision {
        run: PathBuf,
        #[arg(long)]
        subproblem: usize,
        /// Output directory; defaults to the run directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write scatter and trajectory CSVs for a run or a whole campaign.
    ExportPlots { dir: PathBuf },
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let s = run_campaign(&cfg)?;
            println!(
                "config {}: {} cells computed, {} reused, {} failed -> {}",
                s.hash,
                s.computed,
                s.skipped,
                s.failures.len(),
                s.dir.display()
            );
            for f in &s.failures {
                eprintln!("failed: {} on {} seed {}: {}", f.algorithm, f.problem, f.seed, f.message);
            }
            if let Some(t) = &s.aps {
                for ((a, score), rank) in t.algorithms.iter().zip(&t.aps).zip(t.ranks()) {
                    println!("{rank:>3}  {score:>6.3}  {a}");
                }
            }
            Ok(s.failures.is_empty())
        }
        Command::Indicators { dir } => {
            let rows = recompute_indicators(&dir)?;
            println!("{} indicator rows", rows.len());
            Ok(true)
        }
        Command::Aps { dir } => {
            let t = recompute_aps(&dir)?;
            for ((a, score), rank) in t.algorithms.iter().zip(&t.aps).zip(t.ranks()) {
                println!("{rank:>3}  {score:>6.3}  {a}");
            }
            Ok(true)
        }
        Command::ExportDecision { run, subproblem, out } => {
            let out = out.unwrap_or_else(|| run.clone());
            let (p, s) = export_decision(&run, subproblem, &out)?;
            println!("{}\n{}", p.display(), s.display());
            Ok(true)
        }
        Command::ExportPlots { dir } => {
            let out = if dir.join("meta.csv").exists() {
                export_run_plots(&dir)?
            } else {
                export_campaign_plots(&dir)?
            };
            println!("{}", out.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

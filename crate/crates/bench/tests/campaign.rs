use std::fs;
use std::path::Path;
use std::process::Command;

use mmoada::pareto::dominates;
use mmoada::record::{read_individuals, read_trajectory};
use mmoada_bench::campaign::{cell_dir, read_indicators, APS_FILE, INDICATORS_FILE};
use mmoada_bench::export::{export_campaign_plots, export_decision, export_run_plots};
use mmoada_bench::{run_campaign_with, ExperimentConfig};

fn config(out: &Path, algorithms: &str, runs: usize) -> ExperimentConfig {
    let text = format!(
        r#"
        n_evals = 400
        runs = {runs}
        base_seed = 5
        alpha = 0.05
        output = "{}"
        algorithms = [{algorithms}]
        [[problems]]
        name = "SYM-PART1"
        m = 2
        d = 2
        "#,
        out.display()
    );
    ExperimentConfig::from_toml(&text).unwrap()
}

fn first_line(path: &Path) -> String {
    fs::read_to_string(path).unwrap().lines().next().unwrap_or_default().to_string()
}

#[test]
fn campaign_cells_and_rerun() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), r#""nsga3-ada", "nsga3""#, 3);
    let first = run_campaign_with(&cfg, Some(2)).unwrap();
    assert_eq!((first.computed, first.skipped), (6, 0));
    assert!(first.failures.is_empty());
    let rows = read_indicators(&tmp.path().join(INDICATORS_FILE)).unwrap();
    assert_eq!(rows.len(), 6);
    let mut seeds: Vec<u64> = rows.iter().map(|r| r.seed).collect();
    seeds.sort_unstable();
    seeds.dedup();
    assert_eq!(seeds, vec![5, 6, 7]);
    let aps = fs::read_to_string(tmp.path().join(APS_FILE)).unwrap();
    assert_eq!(aps.lines().nth(1), Some("algorithm,aps_igdplus,aps_igdx,rank"));
    assert_eq!(aps.lines().count(), 4);

    let header = format!("# config={}", cfg.hash());
    for file in [INDICATORS_FILE, APS_FILE] {
        assert!(first_line(&tmp.path().join(file)).starts_with(&header), "{file}");
    }
    let p = cfg.problems[0].instance().unwrap();
    let cell = cell_dir(tmp.path(), &cfg.algorithms[0], &p, 6);
    for file in ["population.csv", "trajectory.csv", "meta.csv", INDICATORS_FILE] {
        assert_eq!(first_line(&cell.join(file)), format!("{header} seed=6"), "{file}");
    }

    let snapshot = |name: &str| fs::read(tmp.path().join(name)).unwrap();
    let (ind, ap) = (snapshot(INDICATORS_FILE), snapshot(APS_FILE));
    let population = fs::read(cell.join("population.csv")).unwrap();
    let again = run_campaign_with(&cfg, Some(1)).unwrap();
    assert_eq!((again.computed, again.skipped), (0, 6));
    assert_eq!(snapshot(INDICATORS_FILE), ind);
    assert_eq!(snapshot(APS_FILE), ap);
    assert_eq!(fs::read(cell.join("population.csv")).unwrap(), population);
}

#[test]
fn invalid_pair_is_rejected_before_running() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("never");
    let text = format!(
        "n_evals = 400\nruns = 1\noutput = \"{}\"\nalgorithms = [\"agr\"]\n[[problems]]\nname = \"Omni-test\"\nm = 3\nd = 2\n",
        out.display()
    );
    assert!(ExperimentConfig::from_toml(&text).is_err());
    let mut cfg = config(&out, r#""agr""#, 1);
    cfg.problems[0].m = 3;
    cfg.problems[0].name = "Omni-test".into();
    assert!(run_campaign_with(&cfg, None).is_err());
    assert!(!out.exists());
}

#[test]
fn failed_cells_are_recorded_without_aborting() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), r#""agr-ada", "agr""#, 2);
    // A file where the original runs' problem directory should go.
    let p = cfg.problems[0].instance().unwrap();
    let blocked = cell_dir(tmp.path(), &cfg.algorithms[1], &p, 5);
    fs::create_dir_all(blocked.parent().unwrap().parent().unwrap()).unwrap();
    fs::write(blocked.parent().unwrap(), "not a directory").unwrap();
    let s = run_campaign_with(&cfg, Some(2)).unwrap();
    assert_eq!(s.computed, 2);
    assert_eq!(s.failures.len(), 2);
    assert!(s.failures.iter().all(|f| f.algorithm == "MOEA/D-AGR"));
    assert!(s.aps.is_none());
    let failures = fs::read_to_string(tmp.path().join("failures.csv")).unwrap();
    assert_eq!(failures.lines().count(), 4);
}

#[test]
fn decision_and_plot_exports() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), r#""theta-ada", "theta-uea""#, 2);
    run_campaign_with(&cfg, Some(2)).unwrap();
    let p = cfg.problems[0].instance().unwrap();
    let run = cell_dir(tmp.path(), &cfg.algorithms[0], &p, 5);

    let out = tmp.path().join("decision");
    let (primary, secondary) = export_decision(&run, 7, &out).unwrap();
    let prim = read_individuals(fs::File::open(&primary).unwrap()).unwrap();
    let sec = read_individuals(fs::File::open(&secondary).unwrap()).unwrap();
    assert!(!sec.is_empty());
    assert!(sec.iter().all(|m| m.subproblem == 7));
    for a in &prim {
        assert!(prim.iter().all(|b| !dominates(&b.f, &a.f)));
    }
    let bytes = (fs::read(&primary).unwrap(), fs::read(&secondary).unwrap());
    let again = export_decision(&run, 7, &out).unwrap();
    assert_eq!((fs::read(again.0).unwrap(), fs::read(again.1).unwrap()), bytes);
    assert!(export_decision(&run, 100, &out).is_err());
    let original = cell_dir(tmp.path(), &cfg.algorithms[1], &p, 5);
    assert!(export_decision(&original, 0, &out).is_err());

    let plots = export_run_plots(&run).unwrap();
    let traj = read_trajectory(fs::File::open(plots.join("trajectory.csv")).unwrap()).unwrap();
    assert_eq!(traj.len(), 400 - 100);
    let scatter = fs::read_to_string(plots.join("scatter.csv")).unwrap();
    assert_eq!(scatter.lines().nth(1), Some("x1,x2,f1,f2,subproblem"));

    let campaign = export_campaign_plots(tmp.path()).unwrap();
    let median = read_trajectory(fs::File::open(campaign.join("theta-ada").join("SYM-PART1.csv")).unwrap()).unwrap();
    assert_eq!(median.len(), traj.len());
    let medians = fs::read_to_string(campaign.join("indicator_medians.csv")).unwrap();
    assert_eq!(medians.lines().count(), 4);
    assert!(original.join("plots").join("archive_scatter.csv").exists());
}

#[test]
fn cli_runs_a_campaign() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg_path = tmp.path().join("c.toml");
    fs::write(
        &cfg_path,
        "n_evals = 300\nruns = 2\nalpha = 0.5\noutput = \"out\"\nalgorithms = [\"rvea-ada\", \"rvea\"]\n[[problems]]\nname = \"Two-On-One\"\nm = 2\nd = 2\n",
    )
    .unwrap();
    let bin = env!("CARGO_BIN_EXE_mmoada");
    let status = Command::new(bin).arg("run").arg(&cfg_path).env("MMOADA_WORKERS", "2").output().unwrap().status;
    assert!(status.success());
    let out = tmp.path().join("out");
    assert_eq!(read_indicators(&out.join(INDICATORS_FILE)).unwrap().len(), 4);
    for verb in ["indicators", "aps", "export-plots"] {
        assert!(Command::new(bin).arg(verb).arg(&out).output().unwrap().status.success(), "{verb}");
    }
    let bad = Command::new(bin).arg("run").arg(&cfg_path).env("MMOADA_WORKERS", "zero").output().unwrap().status;
    assert!(!bad.success());
}

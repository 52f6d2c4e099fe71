//! Median IGDX of an ADA variant and its original over a few seeds.
//!
//! `cargo run --release --example compare -- nsga3 SYM-PART1 30000`

use mmoada::ada::{run_ada, AdaConfig, Kind};
use mmoada::baselines::{run_original, OriginalConfig};
use mmoada::evaluate::{igdx, select_tertiary};
use mmoada::problems::{build_reference_set, make_problem};
use mmoada::RngStream;

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn main() -> mmoada::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: Kind = args.first().map_or("nsga3", String::as_str).parse()?;
    let name = args.get(1).map_or("SYM-PART1", String::as_str);
    let evals: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(30_000);

    let p = make_problem(name, 2, 2)?;
    let reference = build_reference_set(&p, 10_000, 5_000, &mut RngStream::new(1))?;
    let rx: Vec<&[f64]> = reference.solutions.iter().map(|x| &x[..]).collect();
    let (mut ada, mut original) = (Vec::new(), Vec::new());
    for seed in 0..5 {
        let a = run_ada(kind, &p, &AdaConfig::new(evals), seed)?;
        let t = select_tertiary(&a.population, a.num_subproblems, p.bounds(), &mut RngStream::new(seed));
        let xs: Vec<&[f64]> = t.members.iter().map(|m| &m.x[..]).collect();
        ada.push(igdx(&xs, &rx)?);

        let o = run_original(kind, &p, &OriginalConfig::new(evals), seed)?;
        let xs: Vec<&[f64]> = o.population.iter().map(|m| &m.x[..]).collect();
        original.push(igdx(&xs, &rx)?);
        println!("seed {seed}: mu = {}, IGDX {:.4} vs {:.4}", a.population.len(), ada[ada.len() - 1], original[original.len() - 1]);
    }
    println!("median IGDX: {}-ADA {:.4}, {} {:.4}", kind.name(), median(ada), kind.name(), median(original));
    Ok(())
}

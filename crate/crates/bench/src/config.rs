//! Declarative campaign description, read from TOML.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use mmoada::ada::Kind;
use mmoada::problems::{make_problem, ProblemInstance};
use mmoada::weights::standard_vectors;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// One benchmark instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    pub m: usize,
    pub d: usize,
}

impl ProblemSpec {
    pub fn instance(&self) -> Result<ProblemInstance> {
        Ok(make_problem(&self.name, self.m, self.d)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Ada,
    Original,
    /// Original algorithm with an unbounded external archive.
    Archive,
}

/// An algorithm column of the campaign, written `nsga3-ada`, `nsga3` or
/// `nsga3-uea` in the config.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AlgorithmSpec {
    pub kind: Kind,
    pub variant: Variant,
}

impl AlgorithmSpec {
    /// Short identifier, also used as a directory name.
    pub fn id(&self) -> String {
        match self.variant {
            Variant::Ada => format!("{}-ada", self.kind.id()),
            Variant::Original => self.kind.id().to_string(),
            Variant::Archive => format!("{}-uea", self.kind.id()),
        }
    }

    /// Display name, identical to the `algorithm` field of its run records.
    pub fn name(&self) -> String {
        match self.variant {
            Variant::Ada => format!("{}-ADA", self.kind.name()),
            Variant::Original => self.kind.name().to_string(),
            Variant::Archive => format!("{}-UEA", self.kind.name()),
        }
    }

    /// Inverse of [`AlgorithmSpec::name`].
    pub fn from_name(name: &str) -> Option<Self> {
        for kind in Kind::ALL {
            for variant in [Variant::Ada, Variant::Original, Variant::Archive] {
                let spec = Self { kind, variant };
                if spec.name() == name {
                    return Some(spec);
                }
            }
        }
        None
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for AlgorithmSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (base, variant) = if let Some(b) = lower.strip_suffix("-ada") {
            (b, Variant::Ada)
        } else if let Some(b) = lower.strip_suffix("-uea") {
            (b, Variant::Archive)
        } else {
            (lower.as_str(), Variant::Original)
        };
        let kind = base.parse::<Kind>().with_context(|| format!("unknown algorithm {s:?}"))?;
        Ok(Self { kind, variant })
    }
}

impl TryFrom<String> for AlgorithmSpec {
    type Error = anyhow::Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<AlgorithmSpec> for String {
    fn from(a: AlgorithmSpec) -> String {
        a.id()
    }
}

fn default_l_ratio() -> f64 {
    0.1
}

fn default_alpha() -> f64 {
    0.001
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Function evaluations per run.
    pub n_evals: usize,
    /// Runs per (algorithm, problem); run `r` uses seed `base_seed + r`.
    pub runs: usize,
    #[serde(default)]
    pub base_seed: u64,
    /// Neighborhood size ratio of the ADA variants.
    #[serde(default = "default_l_ratio")]
    pub l_ratio: f64,
    /// Significance level of the rank-sum tests behind APS.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Result directory; relative paths resolve against the config file.
    #[serde(default = "default_output")]
    pub output: PathBuf,
    pub algorithms: Vec<AlgorithmSpec>,
    pub problems: Vec<ProblemSpec>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).context("parsing experiment config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads and validates a config file, resolving `output` against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg = Self::from_toml(&text)?;
        if cfg.output.is_relative() {
            if let Some(parent) = path.parent() {
                cfg.output = parent.join(&cfg.output);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            bail!("runs must be at least 1");
        }
        if self.algorithms.is_empty() || self.problems.is_empty() {
            bail!("need at least one algorithm and one problem");
        }
        if !(0.0..=1.0).contains(&self.l_ratio) {
            bail!("l_ratio = {} is outside [0, 1]", self.l_ratio);
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            bail!("alpha = {} is outside (0, 1)", self.alpha);
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                bail!("algorithm {a} listed twice");
            }
        }
        for (i, p) in self.problems.iter().enumerate() {
            if self.problems[..i].contains(p) {
                bail!("problem {} (M={}, D={}) listed twice", p.name, p.m, p.d);
            }
            let inst = p.instance()?;
            let n = standard_vectors(inst.num_objectives())?.len();
            if self.n_evals < n {
                bail!("n_evals = {} is below the population size {n} of {}", self.n_evals, inst.label());
            }
        }
        self.base_seed
            .checked_add(self.runs as u64 - 1)
            .context("base_seed + runs overflows")?;
        Ok(())
    }

    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.runs as u64).map(|r| self.base_seed + r)
    }

    /// The config as TOML in fixed field order, without the output directory.
    pub fn canonical(&self) -> String {
        let mut c = self.clone();
        c.output = PathBuf::new();
        toml::to_string(&c).expect("config serializes")
    }

    /// First 16 hex digits of the SHA-256 of [`ExperimentConfig::canonical`].
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
        n_evals = 400
        runs = 3
        algorithms = ["nsga3-ada", "nsga3"]
        [[problems]]
        name = "SYM-PART1"
        m = 2
        d = 2
    "#;

    #[test]
    fn algorithm_names_round_trip() {
        for kind in Kind::ALL {
            for variant in [Variant::Ada, Variant::Original, Variant::Archive] {
                let a = AlgorithmSpec { kind, variant };
                assert_eq!(a.id().parse::<AlgorithmSpec>().unwrap(), a);
                assert_eq!(AlgorithmSpec::from_name(&a.name()), Some(a));
            }
        }
        assert!("nsga2".parse::<AlgorithmSpec>().is_err());
    }

    #[test]
    fn defaults_fill_in() {
        let c = ExperimentConfig::from_toml(BASE).unwrap();
        assert_eq!(c.l_ratio, 0.1);
        assert_eq!(c.alpha, 0.001);
        assert_eq!(c.seeds().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn hash_ignores_field_order_and_output() {
        let reordered = r#"
            algorithms = ["nsga3-ada", "nsga3"]
            output = "elsewhere"
            [[problems]]
            d = 2
            m = 2
            name = "SYM-PART1"
        "#;
        let a = ExperimentConfig::from_toml(BASE).unwrap();
        let b = ExperimentConfig::from_toml(&format!("runs = 3\nn_evals = 400\n{reordered}")).unwrap();
        assert_eq!(a.hash(), b.hash());
        let mut c = a.clone();
        c.runs = 4;
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let omni3 = BASE.replace("SYM-PART1", "Omni-test").replace("m = 2", "m = 3");
        assert!(ExperimentConfig::from_toml(&omni3).is_err());
        assert!(ExperimentConfig::from_toml(&BASE.replace("runs = 3", "runs = 0")).is_err());
        assert!(ExperimentConfig::from_toml(&BASE.replace("n_evals = 400", "n_evals = 50")).is_err());
        assert!(ExperimentConfig::from_toml(&format!("bogus = 1\n{BASE}")).is_err());
    }
}

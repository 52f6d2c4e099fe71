//! Multi-modal multi-objective test problems with analytic Pareto sets.
//!
//! | problem     | M              | D                  | equivalent subsets |
//! |-------------|----------------|--------------------|--------------------|
//! | Two-On-One  | 2              | 2                  | 2                  |
//! | SYM-PART1-3 | 2              | 2                  | 9                  |
//! | SS-UF1, 3   | 2              | 2                  | 2                  |
//! | Polygon     | 3, 5, 8, 10    | 2                  | 9                  |
//! | Omni-test   | 2              | 2, 3, 5, 8, 10     | 3^D                |

mod omni;
mod polygon;
mod ssuf;
mod sym_part;
mod two_on_one;

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxmin::greedy_maxmin;
use crate::rng::RngStream;
use crate::types::{Bounds, DecisionVector, ObjectiveVector};

use sym_part::Variant;

const SUPPORTED: &str = "Two-On-One, SYM-PART1, SYM-PART2, SYM-PART3, SSUF1, SSUF3 (M=2, D=2); \
                         Polygon (M in {3, 5, 8, 10}, D=2); Omni-test (M=2, D in {2, 3, 5, 8, 10})";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProblemKind {
    TwoOnOne,
    SymPart1,
    SymPart2,
    SymPart3,
    Ssuf1,
    Ssuf3,
    Polygon,
    OmniTest,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 8] = [
        ProblemKind::TwoOnOne,
        ProblemKind::SymPart1,
        ProblemKind::SymPart2,
        ProblemKind::SymPart3,
        ProblemKind::Ssuf1,
        ProblemKind::Ssuf3,
        ProblemKind::Polygon,
        ProblemKind::OmniTest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::TwoOnOne => "Two-On-One",
            ProblemKind::SymPart1 => "SYM-PART1",
            ProblemKind::SymPart2 => "SYM-PART2",
            ProblemKind::SymPart3 => "SYM-PART3",
            ProblemKind::Ssuf1 => "SSUF1",
            ProblemKind::Ssuf3 => "SSUF3",
            ProblemKind::Polygon => "Polygon",
            ProblemKind::OmniTest => "Omni-test",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        let kind = match key.as_str() {
            "twoonone" => ProblemKind::TwoOnOne,
            "sympart1" => ProblemKind::SymPart1,
            "sympart2" => ProblemKind::SymPart2,
            "sympart3" => ProblemKind::SymPart3,
            "ssuf1" => ProblemKind::Ssuf1,
            "ssuf3" => ProblemKind::Ssuf3,
            "polygon" => ProblemKind::Polygon,
            "omnitest" => ProblemKind::OmniTest,
            _ => return Err(Error::UnsupportedProblem(format!("unknown problem {s:?}; supported: {SUPPORTED}"))),
        };
        Ok(kind)
    }
}

/// What the optimizers need from a box-constrained problem.
pub trait Problem: Sync {
    /// Display name, qualified by any scaled dimension.
    fn label(&self) -> String;
    fn num_objectives(&self) -> usize;
    fn bounds(&self) -> &Bounds;
    /// `x` must have length `D`; no bounds check.
    fn evaluate_unchecked(&self, x: &[f64]) -> Vec<f64>;

    fn num_variables(&self) -> usize {
        self.bounds().dim()
    }

    fn evaluate(&self, x: &[f64]) -> Result<ObjectiveVector> {
        self.bounds().check(x)?;
        Ok(ObjectiveVector(self.evaluate_unchecked(x)))
    }
}

impl Problem for ProblemInstance {
    fn label(&self) -> String {
        ProblemInstance::label(self)
    }

    fn num_objectives(&self) -> usize {
        self.m
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate_unchecked(&self, x: &[f64]) -> Vec<f64> {
        ProblemInstance::evaluate_unchecked(self, x)
    }
}

/// A concrete test problem instance. Immutable and cheap to clone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance {
    kind: ProblemKind,
    m: usize,
    d: usize,
    bounds: Bounds,
}

/// Builds an instance, rejecting combinations outside the supported matrix.
///
/// ```
/// let p = mmoada::problems::make_problem("Omni-test", 2, 3).unwrap();
/// assert_eq!(p.num_subsets(), 27);
/// assert!(mmoada::problems::make_problem("Omni-test", 3, 2).is_err());
/// ```
pub fn make_problem(name: &str, m: usize, d: usize) -> Result<ProblemInstance> {
    ProblemInstance::new(name.parse()?, m, d)
}

impl ProblemInstance {
    pub fn new(kind: ProblemKind, m: usize, d: usize) -> Result<Self> {
        let ok = match kind {
            ProblemKind::Polygon => matches!(m, 3 | 5 | 8 | 10) && d == 2,
            ProblemKind::OmniTest => m == 2 && matches!(d, 2 | 3 | 5 | 8 | 10),
            _ => m == 2 && d == 2,
        };
        if !ok {
            return Err(Error::UnsupportedProblem(format!(
                "{kind} with M={m}, D={d}; supported: {SUPPORTED}"
            )));
        }
        let (lo, hi) = match kind {
            ProblemKind::TwoOnOne => (two_on_one::LOWER, two_on_one::UPPER),
            ProblemKind::SymPart1 | ProblemKind::SymPart2 | ProblemKind::SymPart3 => (sym_part::LOWER, sym_part::UPPER),
            ProblemKind::Polygon => (polygon::LOWER, polygon::UPPER),
            ProblemKind::OmniTest => (omni::LOWER, omni::UPPER),
            ProblemKind::Ssuf1 => {
                let bounds = Bounds::new(vec![1.0, -1.0], vec![3.0, 1.0])?;
                return Ok(Self { kind, m, d, bounds });
            }
            ProblemKind::Ssuf3 => {
                let bounds = Bounds::new(vec![0.0, 0.0], vec![1.0, 2.0])?;
                return Ok(Self { kind, m, d, bounds });
            }
        };
        Ok(Self {
            kind,
            m,
            d,
            bounds: Bounds::uniform(d, lo, hi)?,
        })
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// Name qualified by the scaled dimension, e.g. `3-Polygon` or `5-Omni-test`.
    pub fn label(&self) -> String {
        match self.kind {
            ProblemKind::Polygon => format!("{}-Polygon", self.m),
            ProblemKind::OmniTest => format!("{}-Omni-test", self.d),
            k => k.name().to_string(),
        }
    }

    pub fn num_objectives(&self) -> usize {
        self.m
    }

    pub fn num_variables(&self) -> usize {
        self.d
    }

    /// Number of equivalent Pareto optimal subsets.
    pub fn num_subsets(&self) -> usize {
        match self.kind {
            ProblemKind::TwoOnOne | ProblemKind::Ssuf1 | ProblemKind::Ssuf3 => 2,
            ProblemKind::SymPart1 | ProblemKind::SymPart2 | ProblemKind::SymPart3 | ProblemKind::Polygon => 9,
            ProblemKind::OmniTest => 3usize.pow(self.d as u32),
        }
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<ObjectiveVector> {
        self.bounds.check(x)?;
        Ok(ObjectiveVector(self.evaluate_unchecked(x)))
    }

    /// Evaluation without the bounds check. `x` must have length `D`.
    pub fn evaluate_unchecked(&self, x: &[f64]) -> Vec<f64> {
        match self.kind {
            ProblemKind::TwoOnOne => two_on_one::evaluate(x),
            ProblemKind::SymPart1 => sym_part::evaluate(Variant::Plain, x),
            ProblemKind::SymPart2 => sym_part::evaluate(Variant::Rotated, x),
            ProblemKind::SymPart3 => sym_part::evaluate(Variant::Distorted, x),
            ProblemKind::Ssuf1 => ssuf::evaluate_ssuf1(x),
            ProblemKind::Ssuf3 => ssuf::evaluate_ssuf3(x),
            ProblemKind::Polygon => polygon::evaluate(self.m, x),
            ProblemKind::OmniTest => omni::evaluate(x),
        }
    }

    /// One Pareto optimal solution and its subset label, uniform over subsets.
    pub fn sample_pareto(&self, rng: &mut RngStream) -> (Vec<f64>, usize) {
        match self.kind {
            ProblemKind::TwoOnOne => two_on_one::sample(rng),
            ProblemKind::SymPart1 => sym_part::sample(Variant::Plain, rng),
            ProblemKind::SymPart2 => sym_part::sample(Variant::Rotated, rng),
            ProblemKind::SymPart3 => sym_part::sample(Variant::Distorted, rng),
            ProblemKind::Ssuf1 => ssuf::sample_ssuf1(rng),
            ProblemKind::Ssuf3 => ssuf::sample_ssuf3(rng),
            ProblemKind::Polygon => polygon::sample(self.m, rng),
            ProblemKind::OmniTest => omni::sample(self.d, rng),
        }
    }

    /// `n` Pareto optimal solutions drawn across all equivalent subsets.
    pub fn sample_pareto_set(&self, n: usize, rng: &mut RngStream) -> Vec<DecisionVector> {
        (0..n).map(|_| DecisionVector(self.sample_pareto(rng).0)).collect()
    }

    /// Label of the equivalent subset whose region contains `x`; `None`
    /// outside the box.
    pub fn locate_subset(&self, x: &[f64]) -> Option<usize> {
        if !self.bounds.contains(x) {
            return None;
        }
        Some(match self.kind {
            ProblemKind::TwoOnOne => two_on_one::locate(x),
            ProblemKind::SymPart1 => sym_part::locate(Variant::Plain, x),
            ProblemKind::SymPart2 => sym_part::locate(Variant::Rotated, x),
            ProblemKind::SymPart3 => sym_part::locate(Variant::Distorted, x),
            ProblemKind::Ssuf1 => ssuf::locate_ssuf1(x),
            ProblemKind::Ssuf3 => ssuf::locate_ssuf3(x),
            ProblemKind::Polygon => polygon::locate(x),
            ProblemKind::OmniTest => omni::locate(x),
        })
    }

    /// The image of `x` under the symmetry that swaps the two Pareto subsets
    /// of a two-subset problem, if the problem has one.
    pub fn symmetric_image(&self, x: &[f64]) -> Option<Vec<f64>> {
        match self.kind {
            ProblemKind::TwoOnOne => Some(two_on_one::mirror(x)),
            ProblemKind::Ssuf1 => Some(ssuf::mirror_ssuf1(x)),
            ProblemKind::Ssuf3 => Some(ssuf::mirror_ssuf3(x)),
            _ => None,
        }
    }
}

/// Pareto optimal reference solutions with objectives and subset labels.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReferenceSet {
    pub solutions: Vec<DecisionVector>,
    pub objectives: Vec<ObjectiveVector>,
    pub subsets: Vec<usize>,
}

impl ReferenceSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// CSV with header `x1..xD,f1..fM,subset`, preceded by `# ` comment lines.
    pub fn write_csv<W: Write>(&self, mut out: W, comment: &str) -> Result<()> {
        for line in comment.lines() {
            writeln!(out, "# {line}")?;
        }
        let d = self.solutions.first().map_or(0, |x| x.len());
        let m = self.objectives.first().map_or(0, |f| f.len());
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (1..=d).map(|j| format!("x{j}")).collect();
        header.extend((1..=m).map(|i| format!("f{i}")));
        header.push("subset".into());
        w.write_record(&header)?;
        for ((x, f), s) in self.solutions.iter().zip(&self.objectives).zip(&self.subsets) {
            let mut row: Vec<String> = x.iter().chain(f.iter()).map(|v| format_real(*v)).collect();
            row.push(s.to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
        let header = r.headers()?.clone();
        let d = header.iter().filter(|h| h.starts_with('x')).count();
        let m = header.iter().filter(|h| h.starts_with('f')).count();
        if header.len() != d + m + 1 {
            return Err(Error::Malformed(format!("unexpected reference header {header:?}")));
        }
        let mut set = ReferenceSet::default();
        for rec in r.records() {
            let rec = rec?;
            let vals: Vec<f64> = rec
                .iter()
                .take(d + m)
                .map(|s| s.parse::<f64>().map_err(|e| Error::Malformed(e.to_string())))
                .collect::<Result<_>>()?;
            let subset = rec[d + m].parse::<usize>().map_err(|e| Error::Malformed(e.to_string()))?;
            set.solutions.push(DecisionVector(vals[..d].to_vec()));
            set.objectives.push(ObjectiveVector(vals[d..].to_vec()));
            set.subsets.push(subset);
        }
        Ok(set)
    }
}

pub(crate) fn format_real(v: f64) -> String {
    // Shortest representation that round-trips.
    format!("{v:?}")
}

/// Samples `pool` Pareto optimal solutions and keeps `keep` of them by greedy
/// max-min selection in the normalized solution space, the first pick random.
pub fn build_reference_set(p: &ProblemInstance, pool: usize, keep: usize, rng: &mut RngStream) -> Result<ReferenceSet> {
    if keep > pool || keep == 0 {
        return Err(Error::InvalidParameter(format!("need 0 < keep <= pool, got keep={keep}, pool={pool}")));
    }
    let samples: Vec<(Vec<f64>, usize)> = (0..pool).map(|_| p.sample_pareto(rng)).collect();
    let points: Vec<&[f64]> = samples.iter().map(|s| s.0.as_slice()).collect();
    let first = rng.index(pool);
    let mut picks = greedy_maxmin(&points, p.bounds(), keep, first);
    picks.sort_unstable();
    let mut set = ReferenceSet::default();
    for i in picks {
        let (x, s) = &samples[i];
        set.objectives.push(ObjectiveVector(p.evaluate_unchecked(x)));
        set.solutions.push(DecisionVector(x.clone()));
        set.subsets.push(*s);
    }
    Ok(set)
}

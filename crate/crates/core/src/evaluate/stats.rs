use std::cmp::Ordering;

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Largest combined sample size handled by exact enumeration.
pub const EXACT_LIMIT: usize = 20;

/// Midranks (1-based) of `values`, in input order.
fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut k = i;
        while k + 1 < order.len() && values[order[k + 1]] == values[order[i]] {
            k += 1;
        }
        let r = 0.5 * ((i + 1) + (k + 1)) as f64;
        for &o in &order[i..=k] {
            ranks[o] = r;
        }
        i = k + 1;
    }
    ranks
}

/// Two-sided Wilcoxon rank-sum p-value.
///
/// Exact when both samples together hold at most [`EXACT_LIMIT`] values,
/// enumerating every split of the (mid)ranks. Otherwise the normal
/// approximation with tie-corrected variance and a continuity correction.
///
/// ```
/// let p = mmoada::evaluate::wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
/// assert!((p - 0.1).abs() < 1e-12);
/// ```
pub fn wilcoxon_rank_sum(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptyInput("rank-sum samples"));
    }
    let all: Vec<f64> = xs.iter().chain(ys).copied().collect();
    if all.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidParameter("rank-sum sample contains NaN".into()));
    }
    let ranks = midranks(&all);
    if all.len() <= EXACT_LIMIT {
        Ok(exact(&ranks, xs.len()))
    } else {
        Ok(approximate(&all, &ranks, xs.len(), ys.len()))
    }
}

fn exact(ranks: &[f64], n1: usize) -> f64 {
    // Doubled midranks are integers.
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let n = doubled.len();
    let total: usize = doubled.iter().sum();
    let observed: usize = doubled[..n1].iter().sum();
    // ways[k][s]: subsets of size k with doubled rank sum s.
    let mut ways = vec![vec![0f64; total + 1]; n1 + 1];
    ways[0][0] = 1.0;
    for &r in &doubled {
        for k in (1..=n1).rev() {
            for s in (r..=total).rev() {
                let add = ways[k - 1][s - r];
                if add != 0.0 {
                    ways[k][s] += add;
                }
            }
        }
    }
    // |W - E| compared exactly as |n W - n1 T|.
    let dev = |s: usize| (n as i64 * s as i64 - n1 as i64 * total as i64).abs();
    let threshold = dev(observed);
    let (mut hit, mut all) = (0.0, 0.0);
    for (s, &c) in ways[n1].iter().enumerate() {
        all += c;
        if dev(s) >= threshold {
            hit += c;
        }
    }
    (hit / all).min(1.0)
}

fn approximate(all: &[f64], ranks: &[f64], n1: usize, n2: usize) -> f64 {
    let n = (n1 + n2) as f64;
    let (a, b) = (n1 as f64, n2 as f64);
    let w: f64 = ranks[..n1].iter().sum();
    let mean = a * (n + 1.0) / 2.0;
    let mut sorted = all.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut k = i;
        while k + 1 < sorted.len() && sorted[k + 1] == sorted[i] {
            k += 1;
        }
        let t = (k - i + 1) as f64;
        tie_term += t * t * t - t;
        i = k + 1;
    }
    let var = a * b / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let dev = ((w - mean).abs() - 0.5).max(0.0);
    let z = dev / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * normal.sf(z)).min(1.0)
}

pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Per-problem outperformance counts and their averages.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreTable {
    pub algorithms: Vec<String>,
    pub problems: Vec<String>,
    /// `scores[p][i]`: rivals significantly better than algorithm `i` on problem `p`.
    pub scores: Vec<Vec<usize>>,
    /// Mean of `scores[..][i]` over problems.
    pub aps: Vec<f64>,
}

impl ScoreTable {
    /// Competition ranks by APS (1 is best, ties share the smaller rank).
    pub fn ranks(&self) -> Vec<usize> {
        self.aps
            .iter()
            .map(|a| 1 + self.aps.iter().filter(|b| b.total_cmp(a) == Ordering::Less).count())
            .collect()
    }
}

/// `delta[i][j]`: algorithm `j` beats `i` with `p < alpha` and a lower median.
pub fn outperformance(samples: &[Vec<f64>], alpha: f64) -> Result<Vec<Vec<bool>>> {
    let n = samples.len();
    let medians: Vec<f64> = samples.iter().map(|s| median(s)).collect();
    let mut delta = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let p = wilcoxon_rank_sum(&samples[i], &samples[j])?;
            if p < alpha {
                match medians[j].total_cmp(&medians[i]) {
                    Ordering::Less => delta[i][j] = true,
                    Ordering::Greater => delta[j][i] = true,
                    Ordering::Equal => {}
                }
            }
        }
    }
    Ok(delta)
}

/// Average performance score over problems; lower is better.
///
/// `samples[p][i]` holds the indicator values (lower is better) of algorithm
/// `i` on problem `p`.
pub fn aps(algorithms: &[String], problems: &[String], samples: &[Vec<Vec<f64>>], alpha: f64) -> Result<ScoreTable> {
    if algorithms.len() < 2 {
        return Err(Error::InvalidParameter("APS needs at least two algorithms".into()));
    }
    if problems.is_empty() || problems.len() != samples.len() {
        return Err(Error::InvalidParameter(format!(
            "{} problem names for {} sample groups",
            problems.len(),
            samples.len()
        )));
    }
    let mut scores = Vec::with_capacity(samples.len());
    for group in samples {
        if group.len() != algorithms.len() {
            return Err(Error::DimensionMismatch {
                expected: algorithms.len(),
                actual: group.len(),
            });
        }
        if group.iter().any(|s| s.len() < 2) {
            return Err(Error::InvalidParameter("APS needs at least two samples per cell".into()));
        }
        let delta = outperformance(group, alpha)?;
        scores.push(delta.iter().map(|row| row.iter().filter(|&&d| d).count()).collect::<Vec<_>>());
    }
    let aps = (0..algorithms.len())
        .map(|i| scores.iter().map(|s| s[i] as f64).sum::<f64>() / scores.len() as f64)
        .collect();
    Ok(ScoreTable {
        algorithms: algorithms.to_vec(),
        problems: problems.to_vec(),
        scores,
        aps,
    })
}

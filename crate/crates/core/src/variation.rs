//! Mating selection, simulated binary crossover and polynomial mutation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::types::Bounds;

const EPS: f64 = 1e-14;

/// SBX and polynomial mutation settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationConfig {
    pub p_c: f64,
    pub eta_c: f64,
    pub p_m: f64,
    pub eta_m: f64,
}

impl VariationConfig {
    /// `p_c = 1`, `eta_c = 20`, `p_m = 1/D`, `eta_m = 20`.
    pub fn standard(dim: usize) -> Self {
        Self {
            p_c: 1.0,
            eta_c: 20.0,
            p_m: 1.0 / dim as f64,
            eta_m: 20.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |p: f64| (0.0..=1.0).contains(&p);
        if !prob(self.p_c) || !prob(self.p_m) {
            return Err(Error::InvalidParameter("variation probabilities must lie in [0, 1]".into()));
        }
        if !(self.eta_c > 0.0 && self.eta_m > 0.0) {
            return Err(Error::InvalidParameter("distribution indices must be positive".into()));
        }
        Ok(())
    }
}

/// Two distinct positions drawn uniformly from `0..mu`.
pub fn select_parents(mu: usize, rng: &mut RngStream) -> Result<(usize, usize)> {
    if mu < 2 {
        return Err(Error::InvalidParameter(format!("need at least two parents, population has {mu}")));
    }
    let a = rng.index(mu);
    let mut b = rng.index(mu - 1);
    if b >= a {
        b += 1;
    }
    Ok((a, b))
}

/// Bounded SBX producing both children.
///
/// Each variable is recombined with probability 0.5, and the children swap
/// that variable with probability 0.5.
pub fn sbx_pair(
    xa: &[f64],
    xb: &[f64],
    cfg: &VariationConfig,
    bounds: &Bounds,
    rng: &mut RngStream,
) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = xa.to_vec();
    let mut c2 = xb.to_vec();
    if rng.uniform() > cfg.p_c {
        return (c1, c2);
    }
    let eta = cfg.eta_c;
    for j in 0..xa.len() {
        if rng.uniform() > 0.5 || (xa[j] - xb[j]).abs() <= EPS {
            continue;
        }
        let (y1, y2) = if xa[j] < xb[j] { (xa[j], xb[j]) } else { (xb[j], xa[j]) };
        let (lo, hi) = (bounds.lower()[j], bounds.upper()[j]);
        let r = rng.uniform();

        let spread = |beta: f64| -> f64 {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if r <= 1.0 / alpha {
                (r * alpha).powf(1.0 / (eta + 1.0))
            } else {
                (1.0 / (2.0 - r * alpha)).powf(1.0 / (eta + 1.0))
            }
        };

        let beta_lo = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
        let child_lo = 0.5 * ((y1 + y2) - spread(beta_lo) * (y2 - y1));
        let beta_hi = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
        let child_hi = 0.5 * ((y1 + y2) + spread(beta_hi) * (y2 - y1));

        let (child_lo, child_hi) = (bounds.clamp(j, child_lo), bounds.clamp(j, child_hi));
        if rng.uniform() <= 0.5 {
            c1[j] = child_hi;
            c2[j] = child_lo;
        } else {
            c1[j] = child_lo;
            c2[j] = child_hi;
        }
    }
    (c1, c2)
}

/// One SBX child: the first of the pair.
pub fn sbx(xa: &[f64], xb: &[f64], cfg: &VariationConfig, bounds: &Bounds, rng: &mut RngStream) -> Vec<f64> {
    sbx_pair(xa, xb, cfg, bounds, rng).0
}

/// Bounded polynomial mutation applied per variable with probability `p_m`.
pub fn polynomial_mutation(x: &mut [f64], cfg: &VariationConfig, bounds: &Bounds, rng: &mut RngStream) {
    let eta = cfg.eta_m;
    let power = 1.0 / (eta + 1.0);
    for j in 0..x.len() {
        if rng.uniform() > cfg.p_m {
            continue;
        }
        let (lo, hi) = (bounds.lower()[j], bounds.upper()[j]);
        let y = x[j];
        let delta1 = (y - lo) / (hi - lo);
        let delta2 = (hi - y) / (hi - lo);
        let r = rng.uniform();
        let deltaq = if r < 0.5 {
            let xy = 1.0 - delta1;
            let val = 2.0 * r + (1.0 - 2.0 * r) * xy.powf(eta + 1.0);
            val.powf(power) - 1.0
        } else {
            let xy = 1.0 - delta2;
            let val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * xy.powf(eta + 1.0);
            1.0 - val.powf(power)
        };
        x[j] = bounds.clamp(j, y + deltaq * (hi - lo));
    }
}

/// Parents to child: SBX, keep the first child, then mutate it.
pub fn reproduce(xa: &[f64], xb: &[f64], cfg: &VariationConfig, bounds: &Bounds, rng: &mut RngStream) -> Vec<f64> {
    let mut child = sbx(xa, xb, cfg, bounds, rng);
    polynomial_mutation(&mut child, cfg, bounds, rng);
    child
}

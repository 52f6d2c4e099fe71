use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normalize::{NormalizationScheme, Normalizer};
use crate::pareto::dominates;
use crate::scalarize::{
    angle_or_zero, apd_value, g_dtch, g_msf, g_tch, msf_alpha, pbi, perpendicular_distance, ApdContext,
};
use crate::weights::VectorSet;

/// The six decomposition-based host algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Agr,
    Du,
    Emoead,
    Nsga3,
    Theta,
    Rvea,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::Agr, Kind::Du, Kind::Emoead, Kind::Nsga3, Kind::Theta, Kind::Rvea];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Agr => "MOEA/D-AGR",
            Kind::Du => "MOEA/D-DU",
            Kind::Emoead => "eMOEA/D",
            Kind::Nsga3 => "NSGA-III",
            Kind::Theta => "theta-DEA",
            Kind::Rvea => "RVEA",
        }
    }

    /// Lowercase identifier used in configs and file names.
    pub fn id(self) -> &'static str {
        match self {
            Kind::Agr => "agr",
            Kind::Du => "du",
            Kind::Emoead => "emoead",
            Kind::Nsga3 => "nsga3",
            Kind::Theta => "theta",
            Kind::Rvea => "rvea",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        let key = key.strip_prefix("moead").unwrap_or(&key);
        Ok(match key {
            "agr" => Kind::Agr,
            "du" => Kind::Du,
            "emoead" | "e" => Kind::Emoead,
            "nsga3" | "nsgaiii" => Kind::Nsga3,
            "theta" | "thetadea" => Kind::Theta,
            "rvea" => Kind::Rvea,
            _ => return Err(Error::InvalidParameter(format!("unknown algorithm {s:?}"))),
        })
    }
}

/// Per-step inputs shared by assignment and deletion.
#[derive(Clone, Copy, Debug)]
pub struct Context<'a> {
    pub vectors: &'a VectorSet,
    /// Smallest angle from each unit vector to any other, for APD.
    pub gammas: &'a [f64],
    pub t: usize,
    pub t_max: usize,
}

/// Assignment rule, deletion comparator and normalization of one host algorithm.
///
/// All comparisons take normalized objective vectors, whose ideal point is
/// the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Strategy {
    pub kind: Kind,
    pub normalization: NormalizationScheme,
    /// PBI penalty for non-axis weight vectors.
    pub theta: f64,
    /// PBI penalty for axis weight vectors.
    pub theta_axis: f64,
    /// MSF schedule scale.
    pub beta: f64,
    /// APD penalty exponent.
    pub apd_alpha: f64,
}

impl Strategy {
    pub fn new(kind: Kind) -> Self {
        let normalization = match kind {
            Kind::Nsga3 | Kind::Theta => NormalizationScheme::Intercept,
            _ => NormalizationScheme::MinWorst,
        };
        Self {
            kind,
            normalization,
            theta: 5.0,
            theta_axis: 1e6,
            beta: 1.0,
            apd_alpha: 2.0,
        }
    }

    /// Normalizer from the ideal point and the objective vectors in `rows`.
    pub fn normalizer<'a, I>(&self, ideal: &[f64], rows: I) -> Normalizer
    where
        I: IntoIterator<Item = &'a [f64]> + Clone,
    {
        match self.normalization {
            NormalizationScheme::Intercept => Normalizer::intercept(ideal, rows),
            NormalizationScheme::MinWorst => {
                let mut worst = vec![f64::NEG_INFINITY; ideal.len()];
                for f in rows {
                    for (w, v) in worst.iter_mut().zip(f) {
                        *w = w.max(*v);
                    }
                }
                Normalizer::min_worst(ideal, &worst)
            }
        }
    }

    fn theta_for(&self, vectors: &VectorSet, j: usize) -> f64 {
        if vectors.is_axis(j) {
            self.theta_axis
        } else {
            self.theta
        }
    }

    /// Value minimized when assigning a normalized vector to subproblem `k`.
    pub fn assignment_value(&self, fp: &[f64], k: usize, ctx: &Context<'_>) -> f64 {
        let zero = Zero(fp.len());
        let w = ctx.vectors.weight(k);
        match self.kind {
            Kind::Agr => g_tch(fp, w, zero.get()),
            Kind::Emoead => g_msf(fp, w, zero.get(), msf_alpha(ctx.t, ctx.t_max, self.beta, w)),
            Kind::Du | Kind::Nsga3 | Kind::Theta => perpendicular_distance(fp, w),
            Kind::Rvea => angle_or_zero(fp, ctx.vectors.unit(k)),
        }
    }

    /// Subproblem index for a normalized vector; ties go to the lowest index.
    pub fn assign(&self, fp: &[f64], ctx: &Context<'_>) -> usize {
        let mut best = (f64::INFINITY, 0);
        for k in 0..ctx.vectors.len() {
            let v = self.assignment_value(fp, k, ctx);
            if v < best.0 {
                best = (v, k);
            }
        }
        best.1
    }

    /// Value of a normalized vector on subproblem `j` under the deletion
    /// criterion, ignoring the dominance layer of NSGA3 and THETA.
    pub fn deletion_value(&self, fp: &[f64], j: usize, ctx: &Context<'_>) -> f64 {
        let zero = Zero(fp.len());
        let w = ctx.vectors.weight(j);
        match self.kind {
            Kind::Agr => g_tch(fp, w, zero.get()),
            Kind::Du => g_dtch(fp, w, zero.get()),
            Kind::Emoead => g_msf(fp, w, zero.get(), msf_alpha(ctx.t, ctx.t_max, self.beta, w)),
            Kind::Nsga3 => perpendicular_distance(fp, w),
            Kind::Theta => pbi(fp, w, zero.get(), self.theta_for(ctx.vectors, j)).value,
            Kind::Rvea => {
                let apd = ApdContext {
                    t: ctx.t,
                    t_max: ctx.t_max,
                    alpha: self.apd_alpha,
                };
                apd_value(fp, ctx.vectors.unit(j), ctx.gammas[j], &apd)
            }
        }
    }

    /// Orders two normalized vectors on subproblem `j`: `Less` means `x` is
    /// strictly better than `u`.
    pub fn compare(&self, x: &[f64], u: &[f64], j: usize, ctx: &Context<'_>) -> Ordering {
        if matches!(self.kind, Kind::Nsga3 | Kind::Theta) {
            if dominates(u, x) {
                return Ordering::Greater;
            }
            if dominates(x, u) {
                return Ordering::Less;
            }
        }
        self.deletion_value(x, j, ctx).total_cmp(&self.deletion_value(u, j, ctx))
    }

    /// Whether `x` is deleted in favour of `u`; the child wins ties.
    ///
    /// ```
    /// use mmoada::ada::{Context, Kind, Strategy};
    /// use mmoada::weights::simplex_lattice;
    ///
    /// let w = simplex_lattice(2, 1).unwrap();
    /// let gammas = mmoada::scalarize::reference_gammas(&w).unwrap();
    /// let ctx = Context { vectors: &w, gammas: &gammas, t: 0, t_max: 1 };
    /// let s = Strategy::new(Kind::Nsga3);
    /// // x dominates u, so it stays whatever the distances.
    /// assert!(!s.worse_than(&[0.1, 0.1], &[0.1, 0.5], 0, &ctx));
    /// assert!(s.worse_than(&[0.2, 0.2], &[0.2, 0.2], 0, &ctx));
    /// ```
    pub fn worse_than(&self, x: &[f64], u: &[f64], j: usize, ctx: &Context<'_>) -> bool {
        self.compare(x, u, j, ctx) != Ordering::Less
    }
}

/// A zero ideal point of the right length without allocating for small `M`.
struct Zero(usize);

impl Zero {
    fn get(&self) -> &'static [f64] {
        const ZEROS: [f64; 16] = [0.0; 16];
        &ZEROS[..self.0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalarize::reference_gammas;
    use crate::weights::{simplex_lattice, VectorSet};

    fn ctx<'a>(w: &'a VectorSet, g: &'a [f64]) -> Context<'a> {
        Context {
            vectors: w,
            gammas: g,
            t: 10,
            t_max: 100,
        }
    }

    fn axes() -> VectorSet {
        VectorSet::from_weights(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn kind_names_round_trip() {
        for k in Kind::ALL {
            assert_eq!(k.id().parse::<Kind>().unwrap(), k);
            assert_eq!(k.name().parse::<Kind>().unwrap(), k);
        }
        assert!("spea2".parse::<Kind>().is_err());
    }

    #[test]
    fn point_on_a_ray_goes_to_that_ray() {
        let w = axes();
        let g = reference_gammas(&w).unwrap();
        let c = ctx(&w, &g);
        for kind in [Kind::Du, Kind::Nsga3, Kind::Theta] {
            assert_eq!(Strategy::new(kind).assign(&[0.0, 1.0], &c), 1);
            assert_eq!(Strategy::new(kind).assign(&[0.7, 0.0], &c), 0);
        }
    }

    #[test]
    fn rvea_assigns_parallel_vector() {
        let w = simplex_lattice(2, 4).unwrap();
        let g = reference_gammas(&w).unwrap();
        let c = ctx(&w, &g);
        let s = Strategy::new(Kind::Rvea);
        assert_eq!(s.assign(&[0.75, 0.25], &c), 3);
        assert_eq!(s.assign(&[3.0, 1.0], &c), 3);
    }

    #[test]
    fn ideal_point_ties_go_to_first_index() {
        let w = simplex_lattice(3, 4).unwrap();
        let g = reference_gammas(&w).unwrap();
        let c = ctx(&w, &g);
        assert_eq!(Strategy::new(Kind::Agr).assign(&[0.0, 0.0, 0.0], &c), 0);
    }

    #[test]
    fn equal_scalar_values_favour_the_child() {
        let w = simplex_lattice(2, 2).unwrap();
        let g = reference_gammas(&w).unwrap();
        let c = ctx(&w, &g);
        let s = Strategy::new(Kind::Agr);
        // Both have g_tch = 0.25 on (0.5, 0.5).
        assert!(s.worse_than(&[0.5, 0.1], &[0.2, 0.5], 1, &c));
        assert!(s.worse_than(&[0.2, 0.5], &[0.5, 0.1], 1, &c));
        assert!(!s.worse_than(&[0.4, 0.1], &[0.2, 0.5], 1, &c));
    }

    #[test]
    fn dominance_precedes_distance() {
        let w = axes();
        let g = reference_gammas(&w).unwrap();
        let c = ctx(&w, &g);
        for kind in [Kind::Nsga3, Kind::Theta] {
            let s = Strategy::new(kind);
            // u dominates x although x is on the ray.
            assert!(s.worse_than(&[0.9, 0.0], &[0.5, 0.0], 0, &c));
            assert!(s.worse_than(&[0.9, 0.3], &[0.5, 0.2], 0, &c));
            // x dominates u although u is on the ray.
            assert!(!s.worse_than(&[0.4, 0.1], &[0.5, 0.1], 0, &c));
            assert!(!s.worse_than(&[0.4, 0.0], &[0.5, 0.0], 0, &c));
        }
        // Mutually non-dominated: NSGA3 prefers the smaller distance.
        let s = Strategy::new(Kind::Nsga3);
        assert!(!s.worse_than(&[0.9, 0.01], &[0.1, 0.5], 0, &c));
        assert!(s.worse_than(&[0.1, 0.5], &[0.9, 0.01], 0, &c));
    }

    #[test]
    fn theta_uses_large_penalty_on_axes() {
        let w = simplex_lattice(2, 2).unwrap();
        let g = reference_gammas(&w).unwrap();
        let c = ctx(&w, &g);
        let s = Strategy::new(Kind::Theta);
        assert!((s.deletion_value(&[0.3, 0.1], 0, &c) - (0.1 + 1e6 * 0.3)).abs() < 1e-6);
        let mid = s.deletion_value(&[0.3, 0.1], 1, &c);
        let d1 = 0.4 / 2f64.sqrt();
        let d2 = 0.2 / 2f64.sqrt();
        assert!((mid - (d1 + 5.0 * d2)).abs() < 1e-12);
    }

    #[test]
    fn rvea_deletion_is_apd() {
        let w = simplex_lattice(2, 4).unwrap();
        let g = reference_gammas(&w).unwrap();
        let c = Context {
            vectors: &w,
            gammas: &g,
            t: 0,
            t_max: 100,
        };
        let s = Strategy::new(Kind::Rvea);
        // At t = 0 APD is the norm, so the shorter vector wins.
        assert!(s.worse_than(&[0.6, 0.6], &[0.1, 0.5], 2, &c));
    }
}

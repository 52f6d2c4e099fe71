//! Scalarizing functions and geometric measures against weight vectors.
//!
//! Every function takes the raw objective vector and an explicit ideal point,
//! so callers working in a normalized space pass a zero ideal.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::weights::VectorSet;

/// Replacement for zero weights in the division-based functions.
pub const ZERO_WEIGHT: f64 = 1e-6;

/// Floor for the MSF denominator when its minimum term vanishes.
pub const MSF_FLOOR: f64 = 1e-12;

/// Weighted Tchebycheff: `max_i w_i |f_i - z*_i|`.
///
/// ```
/// let g = mmoada::scalarize::g_tch(&[0.2, 0.6], &[0.5, 0.5], &[0.0, 0.0]);
/// assert!((g - 0.3).abs() < 1e-12);
/// ```
pub fn g_tch(f: &[f64], w: &[f64], ideal: &[f64]) -> f64 {
    f.iter()
        .zip(w.iter().zip(ideal))
        .map(|(v, (wi, z))| wi * (v - z).abs())
        .fold(0.0, f64::max)
}

fn division_terms<'a>(f: &'a [f64], w: &'a [f64], ideal: &'a [f64]) -> impl Iterator<Item = f64> + 'a {
    f.iter().zip(w.iter().zip(ideal)).map(|(v, (wi, z))| {
        let wi = if *wi == 0.0 { ZERO_WEIGHT } else { *wi };
        (v - z).abs() / wi
    })
}

/// Division Tchebycheff: `max_i |f_i - z*_i| / w_i`, zero weights set to `1e-6`.
pub fn g_dtch(f: &[f64], w: &[f64], ideal: &[f64]) -> f64 {
    division_terms(f, w, ideal).fold(0.0, f64::max)
}

/// The linearly decaying MSF exponent `beta (1 - t/t_max) (M min_k w_k)`.
pub fn msf_alpha(t: usize, t_max: usize, beta: f64, w: &[f64]) -> f64 {
    let m = w.len() as f64;
    let min_w = w.iter().copied().fold(f64::INFINITY, f64::min);
    let progress = if t_max == 0 { 1.0 } else { (t as f64 / t_max as f64).min(1.0) };
    beta * (1.0 - progress) * (m * min_w)
}

/// Multiplicative scalarizing function.
///
/// `(max_i |f_i - z*_i|/w_i)^(1+alpha) / (min_i |f_i - z*_i|/w_i)^alpha`.
/// With `alpha = 0` this is exactly [`g_dtch`].
pub fn g_msf(f: &[f64], w: &[f64], ideal: &[f64], alpha: f64) -> f64 {
    let (mut hi, mut lo) = (0.0f64, f64::INFINITY);
    for term in division_terms(f, w, ideal) {
        hi = hi.max(term);
        lo = lo.min(term);
    }
    if alpha == 0.0 {
        return hi;
    }
    hi.powf(1.0 + alpha) / lo.max(MSF_FLOOR).powf(alpha)
}

/// Penalty-based boundary intersection with its two distance components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PbiBreakdown {
    pub d1: f64,
    pub d2: f64,
    pub theta: f64,
    pub value: f64,
}

/// PBI: `d1 + theta * d2` where `d1` is the (absolute) projection length of
/// `f - z*` on `w` and `d2` the distance from `f` to that projection.
///
/// ```
/// let p = mmoada::scalarize::pbi(&[2.0, 1.0], &[1.0, 0.0], &[0.0, 0.0], 5.0);
/// assert_eq!((p.d1, p.d2, p.value), (2.0, 1.0, 7.0));
/// ```
pub fn pbi(f: &[f64], w: &[f64], ideal: &[f64], theta: f64) -> PbiBreakdown {
    let norm_w = norm(w);
    let dot: f64 = f.iter().zip(w.iter().zip(ideal)).map(|(v, (wi, z))| (v - z) * wi).sum();
    let d1 = dot.abs() / norm_w;
    let d2 = f
        .iter()
        .zip(w.iter().zip(ideal))
        .map(|(v, (wi, z))| {
            let r = v - z - d1 * wi / norm_w;
            r * r
        })
        .sum::<f64>()
        .sqrt();
    PbiBreakdown {
        d1,
        d2,
        theta,
        value: d1 + theta * d2,
    }
}

/// Distance from `fp` to the ray from the origin along `w`.
pub fn perpendicular_distance(fp: &[f64], w: &[f64]) -> f64 {
    let ww: f64 = w.iter().map(|v| v * v).sum();
    let proj = fp.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / ww;
    let sq: f64 = fp
        .iter()
        .zip(w)
        .map(|(a, b)| {
            let r = a - proj * b;
            r * r
        })
        .sum();
    sq.sqrt()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Angle in `[0, pi]` between two nonzero vectors.
pub fn angle(a: &[f64], b: &[f64]) -> Result<f64> {
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return Err(Error::InvalidParameter("angle of a zero vector".into()));
    }
    Ok(angle_with_norms(a, na, b, nb))
}

/// Angle where a zero vector is treated as perfectly aligned.
pub(crate) fn angle_or_zero(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    angle_with_norms(a, na, b, nb)
}

fn angle_with_norms(a: &[f64], na: f64, b: &[f64], nb: f64) -> f64 {
    let cos = a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / (na * nb);
    cos.clamp(-1.0, 1.0).acos()
}

/// `gamma(v_i)`: the smallest angle between `v_i` and any other unit vector.
pub fn reference_gammas(vectors: &VectorSet) -> Result<Vec<f64>> {
    let n = vectors.len();
    if n < 2 {
        return Err(Error::InvalidParameter("APD needs at least two reference vectors".into()));
    }
    Ok((0..n)
        .map(|i| {
            (0..n)
                .filter(|&k| k != i)
                .map(|k| angle_or_zero(vectors.unit(i), vectors.unit(k)))
                .fold(PI, f64::min)
        })
        .collect())
}

/// Schedule inputs for the angle-penalized distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApdContext {
    pub t: usize,
    pub t_max: usize,
    pub alpha: f64,
}

impl ApdContext {
    pub fn new(t: usize, t_max: usize) -> Self {
        Self { t, t_max, alpha: 2.0 }
    }

    fn progress(&self) -> f64 {
        if self.t_max == 0 {
            1.0
        } else {
            (self.t as f64 / self.t_max as f64).min(1.0)
        }
    }
}

/// APD of the translated objective vector `fp` against unit vector `v` with
/// normalizing angle `gamma`: `(1 + M (t/t_max)^alpha angle/gamma) ||fp||`.
pub fn apd_value(fp: &[f64], v: &[f64], gamma: f64, ctx: &ApdContext) -> f64 {
    let m = fp.len() as f64;
    let theta = angle_or_zero(fp, v);
    let penalty = m * ctx.progress().powf(ctx.alpha) * theta / gamma.max(f64::MIN_POSITIVE);
    (1.0 + penalty) * norm(fp)
}

/// APD against reference vector `v_index` of `vectors`.
pub fn apd(fp: &[f64], v_index: usize, vectors: &VectorSet, ctx: &ApdContext) -> Result<f64> {
    let gammas = reference_gammas(vectors)?;
    Ok(apd_value(fp, vectors.unit(v_index), gammas[v_index], ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pareto::dominates;
    use crate::weights::simplex_lattice;
    use proptest::prelude::*;

    const Z: [f64; 2] = [0.0, 0.0];

    #[test]
    fn tch_examples() {
        assert!((g_tch(&[0.2, 0.6], &[0.5, 0.5], &Z) - 0.3).abs() < 1e-12);
        assert_eq!(g_tch(&[1.0, 2.0], &[0.3, 0.7], &[1.0, 2.0]), 0.0);
        assert!((g_tch(&[0.4, 9.0], &[1.0, 0.0], &Z) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn dtch_examples() {
        assert!((g_dtch(&[0.2, 0.6], &[0.5, 0.5], &Z) - 1.2).abs() < 1e-12);
        assert_eq!(g_dtch(&[3.0, 3.0], &[0.5, 0.5], &[3.0, 3.0]), 0.0);
        assert!((g_dtch(&[1e-6, 0.0], &[0.0, 1.0], &Z) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn msf_alpha_examples() {
        assert_eq!(msf_alpha(100, 100, 1.0, &[0.5, 0.5]), 0.0);
        assert!((msf_alpha(0, 100, 1.0, &[0.5, 0.5]) - 1.0).abs() < 1e-12);
        assert!((msf_alpha(50, 100, 1.0, &[0.5, 0.5]) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn msf_examples() {
        assert!((g_msf(&[0.2, 0.6], &[0.5, 0.5], &Z, 1.0) - 3.6).abs() < 1e-12);
        assert_eq!(g_msf(&[0.0, 0.0], &[0.5, 0.5], &Z, 0.0), 0.0);
    }

    #[test]
    fn pbi_collinear_has_no_d2() {
        let p = pbi(&[3.0, 4.0], &[0.6, 0.8], &Z, 5.0);
        assert!(p.d2.abs() < 1e-12);
        assert!((p.value - 5.0).abs() < 1e-12);
    }

    #[test]
    fn perpendicular_distance_examples() {
        assert!((perpendicular_distance(&[1.0, 1.0], &[1.0, 0.0]) - 1.0).abs() < 1e-12);
        assert!(perpendicular_distance(&[2.0, 2.0], &[0.5, 0.5]).abs() < 1e-12);
        assert_eq!(perpendicular_distance(&[0.0, 0.0], &[0.3, 0.7]), 0.0);
    }

    #[test]
    fn angle_examples() {
        assert!((angle(&[1.0, 0.0], &[0.0, 1.0]).unwrap() - PI / 2.0).abs() < 1e-12);
        assert!(angle(&[0.3, 0.4], &[0.3, 0.4]).unwrap().abs() < 1e-7);
        assert!((angle(&[1.0, 0.0], &[-1.0, 0.0]).unwrap() - PI).abs() < 1e-12);
        assert!(angle(&[0.0, 0.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn apd_examples() {
        let v = simplex_lattice(2, 4).unwrap();
        let gam = reference_gammas(&v).unwrap();
        let g = gam[2];
        // (1/2, 1/2) against its lattice neighbour (1/4, 3/4).
        assert!((g - (PI / 4.0 - (1.0f64 / 3.0).atan())).abs() < 1e-12);
        // On the ray: no penalty.
        let fp = [2.0, 2.0];
        let a = apd(&fp, 2, &v, &ApdContext::new(70, 100)).unwrap();
        assert!((a - 8f64.sqrt()).abs() < 1e-12);
        // Angle equal to gamma at t = t_max: factor 1 + M = 3.
        let rot = PI / 4.0 + g;
        let fp = [rot.cos(), rot.sin()];
        let a = apd(&fp, 2, &v, &ApdContext::new(100, 100)).unwrap();
        assert!((a - 3.0).abs() < 1e-12);
        // t = 0: plain norm.
        let a = apd(&[5.0, 0.1], 2, &v, &ApdContext::new(0, 100)).unwrap();
        assert!((a - (25.01f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn apd_needs_two_vectors() {
        let v = VectorSet::from_weights(vec![vec![0.5, 0.5]]).unwrap();
        assert!(apd(&[1.0, 1.0], 0, &v, &ApdContext::new(0, 1)).is_err());
    }

    fn weight(m: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(0.0f64..1.0, m).prop_map(|mut w| {
            w[0] += 1e-3;
            let s: f64 = w.iter().sum();
            w.iter_mut().for_each(|v| *v /= s);
            w
        })
    }

    proptest! {
        #[test]
        fn msf_without_alpha_is_dtch(
            w in weight(3),
            f in proptest::collection::vec(-5.0f64..5.0, 3),
            z in proptest::collection::vec(-5.0f64..5.0, 3),
        ) {
            prop_assert_eq!(g_msf(&f, &w, &z, 0.0), g_dtch(&f, &w, &z));
        }

        #[test]
        fn pbi_d2_is_perpendicular_distance(
            w in weight(4),
            f in proptest::collection::vec(0.0f64..5.0, 4),
        ) {
            let p = pbi(&f, &w, &[0.0; 4], 5.0);
            prop_assert!((p.d2 - perpendicular_distance(&f, &w)).abs() < 1e-12);
        }

        #[test]
        fn tchebycheff_monotone(
            w in weight(3),
            a in proptest::collection::vec(0.0f64..5.0, 3),
            bump in proptest::collection::vec(0.0f64..1.0, 3),
        ) {
            let b: Vec<f64> = a.iter().zip(&bump).map(|(x, d)| x + d).collect();
            if dominates(&a, &b) {
                let z = [0.0; 3];
                prop_assert!(g_tch(&a, &w, &z) <= g_tch(&b, &w, &z));
                prop_assert!(g_dtch(&a, &w, &z) <= g_dtch(&b, &w, &z));
            }
        }

        #[test]
        fn apd_scale_covariant(
            f in proptest::collection::vec(0.01f64..5.0, 2),
            c in 0.1f64..10.0,
            t in 0usize..100,
        ) {
            let v = simplex_lattice(2, 5).unwrap();
            let ctx = ApdContext::new(t, 100);
            let a = apd(&f, 1, &v, &ctx).unwrap();
            let scaled: Vec<f64> = f.iter().map(|x| x * c).collect();
            let b = apd(&scaled, 1, &v, &ctx).unwrap();
            prop_assert!((b - c * a).abs() < 1e-9 * (1.0 + b.abs()));
        }
    }
}

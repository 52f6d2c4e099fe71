//! Greedy max-min subset selection in the normalized solution space.

use crate::normalize::squared_normalized_distance;
use crate::types::Bounds;

/// Picks `k` of `points`, starting from `first`, each time adding the point
/// farthest from everything picked so far. Ties go to the lowest position.
///
/// Returns positions in pick order. `k >= points.len()` orders every point.
pub fn greedy_maxmin<T: AsRef<[f64]>>(points: &[T], bounds: &Bounds, k: usize, first: usize) -> Vec<usize> {
    let n = points.len();
    if n == 0 || k == 0 {
        return Vec::new();
    }
    let k = k.min(n);
    let mut picked = Vec::with_capacity(k);
    let mut taken = vec![false; n];
    let mut nearest = vec![f64::INFINITY; n];
    let mut current = first;
    loop {
        picked.push(current);
        taken[current] = true;
        if picked.len() == k {
            break;
        }
        let anchor = points[current].as_ref();
        let mut best = (f64::NEG_INFINITY, usize::MAX);
        for i in 0..n {
            if taken[i] {
                continue;
            }
            let d = squared_normalized_distance(points[i].as_ref(), anchor, bounds);
            if d < nearest[i] {
                nearest[i] = d;
            }
            if nearest[i] > best.0 {
                best = (nearest[i], i);
            }
        }
        current = best.1;
    }
    picked
}

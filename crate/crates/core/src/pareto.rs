//! Pareto dominance (minimization), non-dominated filtering and sorting.

use crate::error::{Error, Result};

/// `a` dominates `b`: no worse on every objective and strictly better on one.
///
/// Panics if the lengths differ; see [`checked_dominates`].
///
/// ```
/// use mmoada::pareto::dominates;
/// assert!(dominates(&[1.0, 1.0], &[2.0, 2.0]));
/// assert!(!dominates(&[1.0, 2.0], &[2.0, 1.0]));
/// assert!(!dominates(&[1.0, 1.0], &[1.0, 1.0]));
/// ```
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "objective vectors of different length");
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

pub fn checked_dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(dominates(a, b))
}

/// Positions of the rows not dominated by any other row. Duplicates are all kept.
pub fn non_dominated_indices<T: AsRef<[f64]>>(rows: &[T]) -> Vec<usize> {
    (0..rows.len())
        .filter(|&i| {
            let fi = rows[i].as_ref();
            !rows.iter().any(|r| dominates(r.as_ref(), fi))
        })
        .collect()
}

/// Fast non-dominated sorting. Returns fronts of row positions, best first.
pub fn non_dominated_sort<T: AsRef<[f64]>>(rows: &[T]) -> Vec<Vec<usize>> {
    let n = rows.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; n];
    for p in 0..n {
        for q in (p + 1)..n {
            let (fp, fq) = (rows[p].as_ref(), rows[q].as_ref());
            if dominates(fp, fq) {
                dominated_by[p].push(q);
                counts[q] += 1;
            } else if dominates(fq, fp) {
                dominated_by[q].push(p);
                counts[p] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counts[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                counts[q] -= 1;
                if counts[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    fronts
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(checked_dominates(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn filter_and_sort_agree() {
        let rows = vec![
            vec![1.0, 4.0],
            vec![2.0, 2.0],
            vec![3.0, 3.0],
            vec![4.0, 1.0],
            vec![5.0, 5.0],
            vec![2.0, 2.0],
        ];
        let nd = non_dominated_indices(&rows);
        assert_eq!(nd, vec![0, 1, 3, 5]);
        let fronts = non_dominated_sort(&rows);
        assert_eq!(fronts, vec![vec![0, 1, 3, 5], vec![2], vec![4]]);
    }

    fn triple() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>)> {
        (2usize..5).prop_flat_map(|m| {
            let v = || proptest::collection::vec(0i32..4, m).prop_map(|v| v.into_iter().map(f64::from).collect());
            (v(), v(), v())
        })
    }

    proptest! {
        #[test]
        fn irreflexive_and_transitive((a, b, c) in triple()) {
            prop_assert!(!dominates(&a, &a));
            if dominates(&a, &b) && dominates(&b, &c) {
                prop_assert!(dominates(&a, &c));
            }
            prop_assert!(!(dominates(&a, &b) && dominates(&b, &a)));
        }
    }
}

//! Exact nullspace computation over `Q(i)`.

use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

type GQ = GaussianRational;

/// Reduces `rows` (each of length `cols`) to reduced row echelon form in place
/// and returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<GQ>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is non-zero");
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{v : A v = 0}` for the matrix with the given rows.
pub fn nullspace(rows: &[Vec<GQ>], cols: usize) -> Vec<Vec<GQ>> {
    let mut m: Vec<Vec<GQ>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = rref(&mut m, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![GQ::zero(); cols];
        v[free] = GQ::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(v: i64) -> GQ {
        GQ::from_int(v)
    }

    fn times(rows: &[Vec<GQ>], v: &[GQ]) -> Vec<GQ> {
        rows.iter()
            .map(|r| r.iter().zip(v).fold(GQ::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    #[test]
    fn small_kernel() {
        let rows = vec![vec![g(1), g(2), g(3)], vec![g(2), g(4), g(6)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(times(&rows, v).iter().all(Zero::is_zero));
        }
        let full = vec![vec![g(1), GQ::i()], vec![GQ::i(), g(1)]];
        assert!(nullspace(&full, 2).is_empty());
        let singular = vec![vec![g(1), GQ::i()], vec![GQ::i(), g(-1)]];
        assert_eq!(nullspace(&singular, 2).len(), 1);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in prop::collection::vec(-3i64..=3, 12), rows in 1usize..=3) {
            let cols = 4;
            let m: Vec<Vec<GQ>> = entries.chunks(cols).take(rows).map(|r| r.iter().map(|&x| g(x)).collect()).collect();
            let ns = nullspace(&m, cols);
            let mut reduced = m.clone();
            let rank = rref(&mut reduced, cols).len();
            prop_assert_eq!(rank + ns.len(), cols);
            for v in &ns {
                prop_assert!(times(&m, v).iter().all(Zero::is_zero));
            }
        }
    }
}

//! Dense exact linear algebra on small coefficient matrices.

use crate::field::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<K: Field>(rows: &mut Vec<Vec<K>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                *x = x.mul(&inv);
            }
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot_row, other) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in other.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<K: Field>(rows: &[Vec<K>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Finds `x` with `Σ x_i · columns[i] = target`, choosing free variables zero.
pub fn solve<K: Field>(columns: &[Vec<K>], target: &[K]) -> Option<Vec<K>> {
    let nrows = target.len();
    let ncols = columns.len();
    // augmented matrix [A | b], rows indexed by coordinates
    let mut aug: Vec<Vec<K>> = (0..nrows)
        .map(|r| {
            let mut row: Vec<K> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![K::zero(); ncols];
    for (row, &c) in aug.iter().zip(&pivots) {
        x[c] = row[ncols].clone();
    }
    Some(x)
}

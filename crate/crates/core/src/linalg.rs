//! Dense linear algebra over a finite field.

use crate::field::{Fe, Gf};

pub type Matrix = Vec<Vec<Fe>>;

/// Reduces `m` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(k: &Gf, m: &mut Matrix) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(sel) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, sel);
        let inv = k.inv(m[row][col]);
        for x in m[row].iter_mut() {
            *x = k.mul(*x, inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col];
            for (x, &y) in other.iter_mut().zip(&pivot_row) {
                *x = k.sub(*x, k.mul(f, y));
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    pivots
}

pub fn rank(k: &Gf, m: &Matrix) -> usize {
    let mut c = m.clone();
    rref(k, &mut c).len()
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column in
/// increasing order, each with a 1 in its free column.
pub fn kernel(k: &Gf, m: &Matrix, ncols: usize) -> Matrix {
    let mut r = m.clone();
    let pivots = rref(k, &mut r);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Fe::ZERO; ncols];
        v[free] = Fe::ONE;
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = k.neg(row[free]);
        }
        out.push(v);
    }
    out
}

pub fn mat_vec(k: &Gf, m: &Matrix, v: &[Fe]) -> Vec<Fe> {
    m.iter().map(|row| dot(k, row, v)).collect()
}

pub fn dot(k: &Gf, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| k.add(acc, k.mul(x, y)))
}

pub fn transpose(m: &Matrix) -> Matrix {
    let ncols = m.first().map_or(0, |r| r.len());
    (0..ncols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

/// Inverse of a square matrix, if invertible.
pub fn invert(k: &Gf, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }));
            r
        })
        .collect();
    let pivots = rref(k, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn axpy(k: &Gf, a: Fe, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
    x.iter().zip(y).map(|(&xi, &yi)| k.add(k.mul(a, xi), yi)).collect()
}

/// `s x + u y`.
pub fn combine(k: &Gf, s: Fe, x: &[Fe], u: Fe, y: &[Fe]) -> Vec<Fe> {
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| k.add(k.mul(s, xi), k.mul(u, yi)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn kernel_vectors_are_annihilated() {
        let k = make_field(7, 1).unwrap();
        let m: Matrix = vec![
            [1, 2, 3, 4].iter().map(|&x| k.from_i64(x)).collect(),
            [2, 5, 6, 1].iter().map(|&x| k.from_i64(x)).collect(),
        ];
        let ker = kernel(&k, &m, 4);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(mat_vec(&k, &m, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let k = make_field(11, 1).unwrap();
        let m: Matrix = vec![
            [2, 1, 0].iter().map(|&x| k.from_i64(x)).collect(),
            [0, 3, 1].iter().map(|&x| k.from_i64(x)).collect(),
            [1, 0, 5].iter().map(|&x| k.from_i64(x)).collect(),
        ];
        let inv = invert(&k, &m).unwrap();
        for i in 0..3 {
            let col: Vec<Fe> = inv.iter().map(|r| r[i]).collect();
            let e = mat_vec(&k, &m, &col);
            for (j, x) in e.iter().enumerate() {
                assert_eq!(*x, if i == j { Fe::ONE } else { Fe::ZERO });
            }
        }
        let singular: Matrix = vec![vec![Fe(1), Fe(2)], vec![Fe(2), Fe(4)]];
        assert!(invert(&k, &singular).is_none());
    }
}

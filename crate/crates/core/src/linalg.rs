//! Exact dense linear algebra over the rationals.

use crate::scalar::{int, Scalar};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row-echelon form where pivots are searched through the columns in
/// the given order. Returns the nonzero rows and their pivot columns.
pub fn rref_in_order(rows: &[Vec<Scalar>], order: &[usize]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rref(rows: &[Vec<Scalar>], ncols: usize) -> (Matrix, Vec<usize>) {
    let order: Vec<usize> = (0..ncols).collect();
    rref_in_order(rows, &order)
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    rref(rows, ncols).0.len()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect())
        .collect()
}

pub fn mat_vec(a: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(int(0), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![int(0); n];
            for (k, aik) in row.iter().enumerate() {
                if aik.is_zero() {
                    continue;
                }
                for (o, bkj) in out.iter_mut().zip(&b[k]) {
                    if !bkj.is_zero() {
                        *o += aik * bkj;
                    }
                }
            }
            out
        })
        .collect()
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { int(1) } else { int(0) }));
            r
        })
        .collect();
    let order: Vec<usize> = (0..n).collect();
    let (m, piv) = rref_in_order(&aug, &order);
    if piv.len() < n || piv.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `Σ_i c_i rows[i] = target`. Returns the coefficients if a solution exists.
pub fn solve_combination(rows: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = rows.len();
    let n = target.len();
    // Columns of the system are the given rows; unknowns are c_i.
    let mut system: Matrix = (0..n)
        .map(|j| {
            let mut r: Vec<Scalar> = rows.iter().map(|row| row[j].clone()).collect();
            r.push(target[j].clone());
            r
        })
        .collect();
    system.retain(|r| r.iter().any(|x| !x.is_zero()));
    let order: Vec<usize> = (0..=k).collect();
    let (m, piv) = rref_in_order(&system, &order);
    if piv.contains(&k) {
        return None;
    }
    let mut c = vec![int(0); k];
    for (row, &p) in m.iter().zip(&piv) {
        c[p] = row[k].clone();
    }
    Some(c)
}

/// A basis of the null space `{x : A x = 0}`.
pub fn kernel(a: &Matrix, ncols: usize) -> Matrix {
    let (m, piv) = rref(a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![int(0); ncols];
            v[f] = Scalar::one();
            for (row, &p) in m.iter().zip(&piv) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn transpose(a: &Matrix, nrows_hint: usize) -> Matrix {
    let ncols = a.first().map_or(nrows_hint, |r| r.len());
    (0..ncols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

//! Subspaces of a coordinate space held in canonical reduced row-echelon form.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{int, Scalar};
use alloc::vec::Vec;
use num_traits::Zero;

/// A subspace of `Q^n`. Two equal subspaces always have identical rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
        }
        let (rows, pivots) = linalg::rref(vectors, ambient_dim);
        Ok(Subspace { ambient_dim, rows, pivots })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rows: linalg::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the coordinate vectors `e_i` for `i` in `indices`.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<Scalar>> = indices
            .iter()
            .map(|&i| crate::scalar::unit_vector(ambient_dim, i))
            .collect();
        Subspace::span(ambient_dim, &vs).expect("coordinate vectors have the right length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; their unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// `v` minus its component along the subspace, taken with respect to the
    /// complement spanned by the non-pivot coordinate vectors.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &f * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.rows.clone();
        vs.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient_dim, &vs).expect("same ambient dimension")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve Σ a_i u_i = Σ b_j w_j through the kernel of [U; -W]^T.
        let k = self.dim();
        let m = other.dim();
        if k == 0 || m == 0 {
            return Subspace::zero(self.ambient_dim);
        }
        let system: Matrix = (0..self.ambient_dim)
            .map(|c| {
                let mut row: Vec<Scalar> = self.rows.iter().map(|u| u[c].clone()).collect();
                row.extend(other.rows.iter().map(|w| -w[c].clone()));
                row
            })
            .collect();
        let ker = linalg::kernel(&system, k + m);
        let vs: Vec<Vec<Scalar>> = ker
            .iter()
            .map(|coef| {
                let mut v = alloc::vec![int(0); self.ambient_dim];
                for (a, u) in coef.iter().zip(&self.rows) {
                    if !a.is_zero() {
                        for (x, y) in v.iter_mut().zip(u) {
                            *x += a * y;
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient_dim, &vs).expect("same ambient dimension")
    }

    /// Whether the subspace is the direct sum of its intersections with the
    /// degree layers, i.e. stable under every layer projection.
    pub fn is_graded(&self, degrees: &[u32]) -> bool {
        let mut layers: Vec<u32> = degrees.to_vec();
        layers.sort_unstable();
        layers.dedup();
        self.rows.iter().all(|r| {
            layers.iter().all(|&d| {
                let proj: Vec<Scalar> = r
                    .iter()
                    .zip(degrees)
                    .map(|(x, &dj)| if dj == d { x.clone() } else { int(0) })
                    .collect();
                self.contains(&proj)
            })
        })
    }

    /// Whether `self ⊕ other` is the whole space.
    pub fn is_complement_of(&self, other: &Subspace) -> bool {
        self.dim() + other.dim() == self.ambient_dim && self.sum(other).dim() == self.ambient_dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn echelon_form_is_canonical() {
        let a = Subspace::span(3, &[vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]]).unwrap();
        let b = Subspace::span(3, &[vec![int(1), int(2), int(1)], vec![int(1), int(0), int(-1)]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn graded_detection() {
        let deg = [1, 1, 2];
        let g = Subspace::span(3, &[vec![int(1), int(1), int(0)]]).unwrap();
        assert!(g.is_graded(&deg));
        let ng = Subspace::span(3, &[vec![int(1), int(0), int(1)]]).unwrap();
        assert!(!ng.is_graded(&deg));
    }

    #[test]
    fn intersection_dimension() {
        let a = Subspace::coordinate(4, &[0, 1, 2]);
        let b = Subspace::coordinate(4, &[1, 2, 3]);
        assert_eq!(a.intersection(&b), Subspace::coordinate(4, &[1, 2]));
    }
}

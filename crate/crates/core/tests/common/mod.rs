#![allow(dead_code)]

use nilcon_core::free::free_nilpotent;
use nilcon_core::scalar::{int, Scalar};
use nilcon_core::{ContractionFamily, LieAlgebra, Subspace};

pub fn v(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn span(n: usize, rows: &[&[i64]]) -> Subspace {
    let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| v(r)).collect();
    Subspace::span(n, &rows).unwrap()
}

/// Basis `X, Y, T, U` with `[X, Y] = T` and the given degrees.
pub fn heisenberg_times_line(degrees: [u32; 4]) -> LieAlgebra {
    LieAlgebra::graded(degrees.to_vec(), &[(0, 1, v(&[0, 0, 1, 0]))])
        .unwrap()
        .with_labels(["X", "Y", "T", "U"].iter().map(|s| s.to_string()).collect())
}

/// The ideal spanned by `T − U`.
pub fn diagonal_ideal() -> Subspace {
    span(4, &[&[0, 0, 1, -1]])
}

pub fn heisenberg_times_line_family(degrees: [u32; 4]) -> ContractionFamily {
    ContractionFamily::new(&heisenberg_times_line(degrees), &diagonal_ideal()).unwrap()
}

/// Both weightings side by side, divided by both diagonal ideals.
pub fn product_family() -> ContractionFamily {
    let a = heisenberg_times_line([1, 1, 2, 3]);
    let b = heisenberg_times_line([1, 1, 2, 1]);
    let g = a.direct_sum(&b).unwrap();
    let i = span(8, &[&[0, 0, 1, -1, 0, 0, 0, 0], &[0, 0, 0, 0, 0, 0, 1, -1]]);
    ContractionFamily::new(&g, &i).unwrap()
}

/// Free 2-step algebra on `X1, X2, X3` with basis
/// `X1, X2, X3, [X1,X2], [X1,X3], [X2,X3]`.
pub fn free_two_step() -> LieAlgebra {
    free_nilpotent(&[1, 1, 1], 2).unwrap().algebra
}

/// `span([X1,X2] − X1 − X3, [X1,X3], [X2,X3] − X1 − X3)`.
pub fn free_two_step_ideal() -> Subspace {
    span(6, &[&[-1, 0, -1, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[-1, 0, -1, 0, 0, 1]])
}

pub fn free_two_step_family() -> ContractionFamily {
    ContractionFamily::new(&free_two_step(), &free_two_step_ideal()).unwrap()
}

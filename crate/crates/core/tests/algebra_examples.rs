mod common;

use common::*;
use nilcon_core::free::free_nilpotent;
use nilcon_core::scalar::{int, rat, unit_vector};
use nilcon_core::{Error, LieAlgebra, Side, Subspace};

#[test]
fn heisenberg_defining_bracket() {
    let h = LieAlgebra::heisenberg();
    assert_eq!(h.bracket(&unit_vector(3, 0), &unit_vector(3, 1)).unwrap(), unit_vector(3, 2));
}

#[test]
fn bracket_of_a_vector_with_itself_vanishes() {
    let g = free_two_step();
    let x = v(&[3, -1, 2, 5, 0, 7]);
    assert_eq!(g.bracket(&x, &x).unwrap(), v(&[0; 6]));
}

#[test]
fn bracket_rejects_wrong_length() {
    let h = LieAlgebra::heisenberg();
    assert_eq!(
        h.bracket(&v(&[1, 0]), &v(&[0, 1, 0])),
        Err(Error::DimensionMismatch { expected: 3, found: 2 })
    );
}

#[test]
fn induced_bracket_of_free_example_at_one() {
    let fam = free_two_step_family();
    let g1 = fam.induced_bracket(Side::Local).at(&int(1)).unwrap();
    assert_eq!(g1.bracket(&unit_vector(3, 0), &unit_vector(3, 1)).unwrap(), v(&[1, 0, 1]));
}

#[test]
fn dilation_examples() {
    let a = LieAlgebra::abelian(vec![1, 1, 2]);
    assert_eq!(a.dilate(&int(2), &v(&[1, 1, 1])).unwrap(), v(&[2, 2, 4]));
    let x = vec![rat(1, 3), int(-2), rat(5, 7)];
    assert_eq!(a.dilate(&int(1), &x).unwrap(), x);
    let r = rat(3, 2);
    let back = a.dilate(&r, &a.dilate(&r.recip(), &x).unwrap()).unwrap();
    assert_eq!(back, x);
}

#[test]
fn lower_central_series_examples() {
    let h = LieAlgebra::heisenberg();
    let lcs = h.lower_central_series();
    assert_eq!(lcs, vec![Subspace::whole(3), Subspace::coordinate(3, &[2])]);

    let r3 = LieAlgebra::abelian(vec![1, 1, 1]);
    assert_eq!(r3.lower_central_series(), vec![Subspace::whole(3)]);

    let hr = heisenberg_times_line([1, 1, 2, 3]);
    let lcs = hr.lower_central_series();
    assert_eq!(lcs, vec![Subspace::whole(4), Subspace::coordinate(4, &[2])]);
}

#[test]
fn homogeneous_dimension_examples() {
    assert_eq!(LieAlgebra::heisenberg().homogeneous_dimension().unwrap(), 4);
    let hr = heisenberg_times_line([1, 1, 2, 3]);
    assert_eq!(hr.homogeneous_dimension().unwrap(), 7);
    let q = hr.quotient(&Subspace::coordinate(4, &[3])).unwrap();
    assert_eq!(q.algebra.homogeneous_dimension().unwrap(), 4);
}

#[test]
fn growth_dimension_examples() {
    assert_eq!(LieAlgebra::heisenberg().growth_dimension(), 4);
    assert_eq!(LieAlgebra::abelian(vec![1, 1, 1]).growth_dimension(), 3);
    let product = product_family();
    let quotient = product.ambient().quotient(product.ideal()).unwrap().algebra;
    assert_eq!(quotient.growth_dimension(), 8);
}

#[test]
fn quotient_examples() {
    let hr = heisenberg_times_line([1, 1, 2, 3]);
    let by_u = hr.quotient(&Subspace::coordinate(4, &[3])).unwrap();
    assert!(by_u.algebra.same_brackets(&LieAlgebra::heisenberg()));
    assert_eq!(by_u.algebra.degrees().unwrap(), &[1, 1, 2]);

    let by_t = hr.quotient(&Subspace::coordinate(4, &[2])).unwrap();
    assert!(by_t.algebra.is_abelian());
    assert_eq!(by_t.algebra.dim(), 3);

    let by_zero = hr.quotient(&Subspace::zero(4)).unwrap();
    assert!(by_zero.algebra.same_brackets(&hr));
    assert_eq!(by_zero.algebra.degrees().unwrap(), hr.degrees().unwrap());
}

#[test]
fn quotient_by_non_graded_ideal_is_ungraded() {
    let hr = heisenberg_times_line([1, 1, 2, 3]);
    let q = hr.quotient(&diagonal_ideal()).unwrap();
    assert!(!q.algebra.is_graded());
    assert_eq!(q.algebra.homogeneous_dimension(), Err(Error::NotGraded));
}

#[test]
fn quotient_rejects_non_ideal() {
    let h = LieAlgebra::heisenberg();
    assert_eq!(h.quotient(&Subspace::coordinate(3, &[0])).err(), Some(Error::NotAnIdeal));
}

#[test]
fn free_nilpotent_dimensions() {
    let f = free_nilpotent(&[1, 1, 1], 2).unwrap();
    assert_eq!(f.algebra.dim(), 6);
    assert_eq!(f.generators, vec![0, 1, 2]);

    let h = free_nilpotent(&[1, 1], 2).unwrap();
    assert!(h.algebra.same_brackets(&LieAlgebra::heisenberg()));

    let f = free_nilpotent(&[1, 1], 3).unwrap();
    assert_eq!(f.algebra.dim(), 5);
    assert_eq!(f.algebra.degrees().unwrap(), &[1, 1, 2, 3, 3]);
}

#[test]
fn free_nilpotent_respects_weights() {
    let f = free_nilpotent(&[1, 2], 3).unwrap();
    assert_eq!(f.algebra.degrees().unwrap(), &[1, 2, 3, 4, 5]);
}

#[test]
fn free_nilpotent_step_bound() {
    assert_eq!(free_nilpotent(&[1, 1], 7).err(), Some(Error::StepTooLarge { step: 7, max: 6 }));
}

#[test]
fn self_bracket_relation_is_rejected() {
    let r = LieAlgebra::graded(vec![1, 1, 2], &[(0, 0, v(&[0, 0, 1]))]);
    assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
}

#[test]
fn grading_violation_is_rejected() {
    let r = LieAlgebra::graded(vec![1, 1, 3], &[(0, 1, v(&[0, 0, 1]))]);
    assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
}

#[test]
fn jacobi_violation_is_rejected() {
    // [e2,e4] = e5 breaks Jacobi on (e1, e2, e3).
    let rels = [
        (0, 1, v(&[0, 0, 1, 0, 0])),
        (0, 2, v(&[0, 0, 0, 1, 0])),
        (1, 3, v(&[0, 0, 0, 0, 1])),
    ];
    let r = LieAlgebra::graded(vec![1, 1, 2, 3, 4], &rels);
    assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
}

#[test]
fn ideal_generation_closes_under_brackets() {
    let h = LieAlgebra::heisenberg();
    let i = h.ideal_generated_by(&[v(&[1, 0, 0])]).unwrap();
    assert_eq!(i, Subspace::coordinate(3, &[0, 2]));
    assert!(h.is_ideal(&i));
}

mod common;

use common::*;
use nilcon_core::grouplaw::{left_invariant_fields, VectorField};
use nilcon_core::opcalc::{
    expand_in_frame, homogeneity_profile, monomial_operator, multi_indices, recombine, FramePair,
    PolyDiffOperator,
};
use nilcon_core::scalar::{int, rat};
use nilcon_core::{ContractionFamily, LieAlgebra, Poly, Side};
use std::collections::BTreeMap;

fn half_x2() -> Poly {
    Poly::var(1).scale(&rat(1, 2))
}

fn expect(polys: &BTreeMap<Vec<u32>, Poly>, entries: &[(&[u32], Poly)]) {
    let wanted: BTreeMap<Vec<u32>, Poly> = entries.iter().map(|(k, p)| (k.to_vec(), p.clone())).collect();
    assert_eq!(polys, &wanted);
}

fn ambient_unit(j: usize) -> Vec<u32> {
    let mut g = vec![0; 6];
    g[j] = 1;
    g
}

#[test]
fn partial_after_multiplication() {
    let d1 = PolyDiffOperator::partial(2, 0);
    let x1 = PolyDiffOperator::multiplication(2, Poly::var(0));
    let mut expected = PolyDiffOperator::zero(2);
    expected.add_term(vec![1, 0], Poly::var(0));
    expected.add_term(vec![0, 0], Poly::one());
    assert_eq!(d1.compose(&x1), expected);
}

#[test]
fn identity_is_neutral() {
    let f = left_invariant_fields(&LieAlgebra::heisenberg()).unwrap();
    let op = monomial_operator(&f, &[2, 1, 0]);
    let id = PolyDiffOperator::identity(3);
    assert_eq!(op.compose(&id), op);
    assert_eq!(id.compose(&op), op);
}

#[test]
fn composition_is_associative_and_acts_pointwise() {
    let f = left_invariant_fields(&free_two_step()).unwrap();
    let a = PolyDiffOperator::from_field(&f[0]);
    let b = PolyDiffOperator::from_field(&f[1]).left_mul(&Poly::var(2));
    let c = monomial_operator(&f, &[0, 0, 1, 1, 0, 0]);
    assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    let test = &(&Poly::var(0).pow(3) * &Poly::var(4)) + &Poly::var(1).pow(2);
    assert_eq!(a.compose(&b).apply(&test), a.apply(&b.apply(&test)));
}

#[test]
fn commutator_of_member_frame_is_bracket_field() {
    let fam = free_two_step_family();
    let g1 = fam.induced_bracket(Side::Local).at(&int(1)).unwrap();
    let f = left_invariant_fields(&g1).unwrap();
    let x1 = PolyDiffOperator::from_field(&f[0]);
    let x2 = PolyDiffOperator::from_field(&f[1]);
    let comm = x1.compose(&x2).sub(&x2.compose(&x1));
    let bracket = VectorField::combination(&f, &v(&[1, 0, 1]));
    assert_eq!(comm, PolyDiffOperator::from_field(&bracket));
}

#[test]
fn monomial_operator_edge_cases() {
    let f = left_invariant_fields(&LieAlgebra::heisenberg()).unwrap();
    assert_eq!(monomial_operator(&f, &[0, 0, 0]), PolyDiffOperator::identity(3));
    for j in 0..3 {
        let mut g = vec![0; 3];
        g[j] = 1;
        assert_eq!(monomial_operator(&f, &g), PolyDiffOperator::from_field(&f[j]));
    }
    let xy = monomial_operator(&f, &[1, 1, 0]);
    let yx = PolyDiffOperator::from_field(&f[1]).compose(&PolyDiffOperator::from_field(&f[0]));
    assert_eq!(xy.sub(&yx), PolyDiffOperator::from_field(&f[2]));
}

#[test]
fn forward_frame_formulas() {
    let pair = FramePair::new(&free_two_step_family(), Side::Local).unwrap();
    let h = half_x2();
    let d = Poly::var(0).sub_half(&Poly::var(2));
    expect(&pair.comparison(&ambient_unit(0)).unwrap().polys, &[(&[1, 0, 0], -&h), (&[0, 0, 1], -&h)]);
    expect(&pair.comparison(&ambient_unit(1)).unwrap().polys, &[(&[1, 0, 0], d.clone()), (&[0, 0, 1], d)]);
    expect(&pair.comparison(&ambient_unit(2)).unwrap().polys, &[(&[1, 0, 0], h.clone()), (&[0, 0, 1], h)]);
}

#[test]
fn reverse_frame_formulas() {
    let pair = FramePair::new(&free_two_step_family(), Side::Local).unwrap();
    let h = half_x2();
    let d = Poly::var(0).sub_half(&Poly::var(2));
    expect(&pair.reverse_comparison(&ambient_unit(0)).unwrap().polys, &[(&[1, 0, 0], h.clone()), (&[0, 0, 1], h.clone())]);
    expect(&pair.reverse_comparison(&ambient_unit(1)).unwrap().polys, &[(&[1, 0, 0], -&d), (&[0, 0, 1], -&d)]);
    expect(&pair.reverse_comparison(&ambient_unit(2)).unwrap().polys, &[(&[1, 0, 0], -&h), (&[0, 0, 1], -&h)]);
}

trait HalfDifference {
    fn sub_half(&self, other: &Poly) -> Poly;
}

impl HalfDifference for Poly {
    fn sub_half(&self, other: &Poly) -> Poly {
        (self - other).scale(&rat(1, 2))
    }
}

#[test]
fn expansion_in_own_frame_is_trivial() {
    let f = left_invariant_fields(&free_two_step()).unwrap();
    let op = monomial_operator(&f, &[1, 0, 2, 0, 0, 1]);
    let c = expand_in_frame(&op, &f).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[&vec![1, 0, 2, 0, 0, 1]], Poly::one());
}

#[test]
fn identical_frames_compare_to_zero() {
    let h = LieAlgebra::heisenberg();
    let fam = ContractionFamily::new(&h, &nilcon_core::Subspace::zero(3)).unwrap();
    let pair = FramePair::new(&fam, Side::Local).unwrap();
    for gamma in multi_indices(3, 2) {
        assert!(pair.comparison(&gamma).unwrap().polys.is_empty());
    }
}

#[test]
fn expansion_round_trips_exactly() {
    let f = left_invariant_fields(&nilcon_core::free::free_nilpotent(&[1, 2], 3).unwrap().algebra).unwrap();
    let op = PolyDiffOperator::partial(5, 0)
        .compose(&PolyDiffOperator::partial(5, 1))
        .left_mul(&Poly::var(3))
        .add(&PolyDiffOperator::partial(5, 4));
    let c = expand_in_frame(&op, &f).unwrap();
    assert_eq!(recombine(&c, &f), op);
}

#[test]
fn homogeneity_profile_examples() {
    assert_eq!(homogeneity_profile(&Poly::constant(int(3)), &[1, 1, 1]), vec![(0, Poly::constant(int(3)))]);
    assert_eq!(homogeneity_profile(&Poly::var(1), &[1, 1, 1]), vec![(1, Poly::var(1))]);
    let p = &Poly::var(2) + &Poly::var(0).pow(3);
    let prof = homogeneity_profile(&p, &[1, 1, 2]);
    assert_eq!(prof.iter().map(|(d, _)| *d).collect::<Vec<_>>(), vec![2, 3]);
}

#[test]
fn comparison_polynomials_respect_degree_bounds() {
    for fam in [free_two_step_family(), heisenberg_times_line_family([1, 1, 2, 3]), heisenberg_times_line_family([1, 1, 2, 1])] {
        for side in [Side::Local, Side::Global] {
            let pair = FramePair::new(&fam, side).unwrap();
            for gamma in multi_indices(fam.ambient().dim(), 2) {
                for c in [pair.comparison(&gamma).unwrap(), pair.reverse_comparison(&gamma).unwrap()] {
                    assert!(c.degree_ledger_holds(), "{side:?} {gamma:?}: {:?}", c.violations());
                    assert!(c.round_trip);
                    assert!(c.scaled_terms_vanish_at_limit());
                    assert!(c.diagonal_vanishes_at_origin());
                }
            }
        }
    }
}

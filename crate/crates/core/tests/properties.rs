use nilcon_core::audit::{audit_random_case, AuditBudget};
use nilcon_core::grouplaw::{bch_product, check_group_law, frame_is_homogeneous, left_invariant_fields};
use nilcon_core::opcalc::{expand_in_frame, recombine, PolyDiffOperator};
use nilcon_core::sampling::Sampler;
use nilcon_core::scalar::{int, rat, Scalar};
use nilcon_core::spectral::heat::{heat_kernel, heat_trace};
use nilcon_core::spectral::plancherel::density_level_set;
use nilcon_core::spectral::SymbolOperator;
use nilcon_core::{LieAlgebra, Poly};
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..2, -4i64..5), 0..4).prop_map(|terms| {
        let mut p = Poly::zero();
        for (a, b, c, k) in terms {
            p.add_term(vec![a, b, c], int(k));
        }
        p
    })
}

fn small_operator() -> impl Strategy<Value = PolyDiffOperator> {
    prop::collection::vec((0u32..2, 0u32..2, 0u32..2, small_poly()), 1..3).prop_map(|terms| {
        let mut op = PolyDiffOperator::zero(3);
        for (a, b, c, p) in terms {
            op.add_term(vec![a, b, c], p);
        }
        op
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-6i64..7, 1i64..5), n).prop_map(|v| v.into_iter().map(|(p, q)| rat(p, q)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn lower_central_series_shrinks(seed in any::<u64>()) {
        let g = Sampler::new(seed).graded_algebra().unwrap();
        let lcs = g.lower_central_series();
        prop_assert!(lcs.windows(2).all(|w| w[1].dim() < w[0].dim()));
        prop_assert!(lcs.len() as u32 <= g.degrees().unwrap().iter().copied().max().unwrap());
        prop_assert!(g.growth_dimension() as usize >= g.dim());
        prop_assert_eq!(g.growth_dimension() as usize == g.dim(), g.is_abelian());
    }

    #[test]
    fn quotient_projection_is_a_homomorphism(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let g = s.graded_algebra().unwrap();
        let i = s.ideal(&g).unwrap();
        let q = g.quotient(&i).unwrap();
        let (x, y) = (s.vector(g.dim()), s.vector(g.dim()));
        let lhs = q.project(&g.bracket(&x, &y).unwrap());
        let rhs = q.algebra.bracket(&q.project(&x), &q.project(&y)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(q.algebra.is_graded(), i.is_graded(g.degrees().unwrap()));
    }

    #[test]
    fn dilations_form_a_group(seed in any::<u64>(), a in 1i64..6, b in 1i64..6) {
        let mut s = Sampler::new(seed);
        let g = s.graded_algebra().unwrap();
        let x = s.vector(g.dim());
        let (r, t) = (rat(a, b), rat(b, a + 1));
        let twice = g.dilate(&r, &g.dilate(&t, &x).unwrap()).unwrap();
        prop_assert_eq!(twice, g.dilate(&(&r * &t), &x).unwrap());
        let (y, z) = (g.dilate(&r, &x).unwrap(), s.vector(g.dim()));
        let lhs = g.dilate(&r, &g.bracket(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, g.bracket(&y, &g.dilate(&r, &z).unwrap()).unwrap());
    }

    #[test]
    fn bch_inverse_and_associativity(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let g = s.graded_algebra().unwrap();
        let n = g.dim();
        let (x, y, z) = (s.vector(n), s.vector(n), s.vector(n));
        let neg: Vec<Scalar> = x.iter().map(|c| -c).collect();
        prop_assert!(bch_product(&g, &x, &neg).unwrap().iter().all(|c| *c == int(0)));
        let left = bch_product(&g, &bch_product(&g, &x, &y).unwrap(), &z).unwrap();
        let right = bch_product(&g, &x, &bch_product(&g, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_matches_pointwise_action(a in small_operator(), b in small_operator(), c in small_operator(), f in small_poly()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
        prop_assert_eq!(a.compose(&PolyDiffOperator::identity(3)), a.clone());
    }

    #[test]
    fn frame_expansion_round_trips(op in small_operator()) {
        let f = left_invariant_fields(&LieAlgebra::heisenberg()).unwrap();
        let c = expand_in_frame(&op, &f).unwrap();
        prop_assert_eq!(recombine(&c, &f), op);
    }

    #[test]
    fn polynomial_substitution_is_a_ring_map(p in small_poly(), q in small_poly(), x in vector(3)) {
        let subs = [&Poly::var(1) + &Poly::one(), Poly::var(0).pow(2), Poly::var(2)];
        let lhs = (&p * &q).substitute(&subs);
        prop_assert_eq!(&lhs, &(&p.substitute(&subs) * &q.substitute(&subs)));
        let point: Vec<Scalar> = subs.iter().map(|s| s.eval(&x)).collect();
        prop_assert_eq!(lhs.eval(&x), (&p * &q).eval(&point));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn contraction_theorems_hold(seed in any::<u64>()) {
        let budget = AuditBudget { intertwining_triples: 10, bch_triples: 10 };
        let (dim, items) = audit_random_case(&mut Sampler::new(seed), budget).unwrap();
        prop_assert!(dim <= 6);
        for item in items {
            prop_assert!(item.passed, "{} failed for seed {}", item.name, seed);
        }
    }

    #[test]
    fn group_law_is_exactly_unimodular(seed in any::<u64>()) {
        let g = Sampler::new(seed).graded_algebra().unwrap();
        prop_assume!(g.dim() <= 5);
        prop_assert!(check_group_law(&g).unwrap().all());
        prop_assert!(frame_is_homogeneous(&g, &left_invariant_fields(&g).unwrap()).unwrap());
    }
}

fn symbol() -> impl Strategy<Value = SymbolOperator> {
    (1u32..3, 0.2f64..3.0, 0.2f64..3.0)
        .prop_map(|(k, a, b)| SymbolOperator::univariate(&[(a, 2 * (k + 1)), (b, 2)]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn heat_kernels_are_even_and_traces_decrease(p in symbol(), t in 0.05f64..5.0, x in 0.0f64..3.0) {
        let h = heat_kernel(&p, t, &[x]).unwrap();
        prop_assert_eq!(h, heat_kernel(&p, t, &[-x]).unwrap());
        prop_assert!(heat_kernel(&p, t, &[0.0]).unwrap() >= h.abs());
        prop_assert!(heat_trace(&p, 2.0 * t).unwrap() < heat_trace(&p, t).unwrap());
    }

    #[test]
    fn spectral_density_is_nonnegative(p in symbol(), l in -6.0f64..6.0) {
        prop_assert!(density_level_set(&p, 10f64.powf(l)).unwrap() >= 0.0);
    }
}

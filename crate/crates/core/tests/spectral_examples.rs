use nilcon_core::spectral::envelope::gaussian_envelope_fit;
use nilcon_core::spectral::expansion::{expansion_order_gain, global_leading_term, local_leading_terms};
use nilcon_core::spectral::heat::{heat_kernel, heat_kernel_fixed, heat_trace, semigroup_deviation, spatial_reach};
use nilcon_core::spectral::plancherel::{density_level_set, plancherel_report, spectral_cdf};
use nilcon_core::spectral::quad::{panel_edges, GaussLegendre};
use nilcon_core::spectral::riesz::{
    check_alpha, min_heat_order, min_spatial_order, riesz_direct_mellin, riesz_pairing, riesz_potential, BumpFunction,
};
use nilcon_core::spectral::scaling::{spectral_scaling_check, TestMultiplier};
use nilcon_core::spectral::special::{binomial, riesz_constant};
use nilcon_core::spectral::trace::{trace_bound_ratio, trace_scaling_deviation, trace_slopes, log_grid};
use nilcon_core::spectral::{ModelTriple, SymbolOperator};
use nilcon_core::Error;
use std::f64::consts::PI;

fn quartic_plus_square() -> SymbolOperator {
    SymbolOperator::univariate(&[(1.0, 4), (1.0, 2)]).unwrap()
}

fn quartic() -> SymbolOperator {
    SymbolOperator::univariate(&[(1.0, 4)]).unwrap()
}

fn square() -> SymbolOperator {
    SymbolOperator::univariate(&[(1.0, 2)]).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn model_triple_of_the_canonical_symbol() {
    let t = ModelTriple::new(&quartic_plus_square());
    assert_eq!((t.q0, t.q_inf), (1.0, 2.0));
    assert_eq!(t.local, quartic());
    let (big, small) = t.dominance_ratios(1e4, 1e-4);
    assert!((big - 1.0).abs() < 1e-6 && (small - 1.0).abs() < 1e-6);
}

#[test]
fn symbols_must_be_even_and_positive() {
    assert!(SymbolOperator::univariate(&[(1.0, 3)]).is_err());
    assert!(SymbolOperator::univariate(&[(-1.0, 2)]).is_err());
}

#[test]
fn gaussian_heat_kernel_at_origin() {
    let h = heat_kernel(&square(), 1.0, &[0.0]).unwrap();
    assert!((h - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-12);
    let h = heat_kernel(&square(), 1.0, &[1.5]).unwrap();
    assert!(rel(h, (-1.5f64 * 1.5 / 4.0).exp() / (4.0 * PI).sqrt()) < 1e-10);
}

#[test]
fn heat_kernel_is_even_normalised_and_positive_at_origin() {
    let p = quartic_plus_square();
    for t in [0.1, 1.0] {
        for x in [0.3, 1.7] {
            assert_eq!(heat_kernel(&p, t, &[x]).unwrap(), heat_kernel(&p, t, &[-x]).unwrap());
        }
        assert!(heat_kernel(&p, t, &[0.0]).unwrap() > 0.0);
        let reach = spatial_reach(&p, t);
        let f = |x: f64| heat_kernel(&p, t, &[x]).unwrap();
        let mass = 2.0 * GaussLegendre::new(24).composite(&f, &panel_edges(0.0, reach, reach / 40.0, 40));
        assert!((mass - 1.0).abs() < 1e-8, "t = {t}: mass {mass}");
    }
}

#[test]
fn two_heat_kernel_routes_agree() {
    let p = quartic_plus_square();
    for t in [0.01, 0.1, 1.0, 10.0] {
        for x in [0.0, 0.5, 2.0] {
            let a = heat_kernel(&p, t, &[x]).unwrap();
            let b = heat_kernel_fixed(&p, t, &[x]).unwrap();
            assert!((a - b).abs() < 1e-8, "t = {t}, x = {x}");
        }
    }
}

#[test]
fn quartic_heat_kernel_scales() {
    let p = quartic();
    for t in [0.2, 5.0] {
        for x in [0.0, 0.7, 1.9] {
            let lhs = heat_kernel(&p, t, &[x]).unwrap();
            let s = f64::powf(t, -0.25);
            let rhs = s * heat_kernel(&p, 1.0, &[s * x]).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}

#[test]
fn semigroup_property() {
    let p = quartic_plus_square();
    for x in [0.0, 0.8, 2.5] {
        assert!(semigroup_deviation(&p, 0.3, 0.7, x).unwrap() < 1e-6);
    }
}

#[test]
fn heat_trace_regimes_and_bound() {
    let p = quartic_plus_square();
    let s = trace_slopes(&p).unwrap();
    assert!((s.small_t + 0.25).abs() < 0.01, "{}", s.small_t);
    assert!((s.large_t + 0.5).abs() < 0.01, "{}", s.large_t);
    let ts = log_grid(1e-4, 1e4, 17);
    let values: Vec<f64> = ts.iter().map(|&t| heat_trace(&p, t).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    let ratio = trace_bound_ratio(&p, &ts).unwrap();
    assert!(ratio.is_finite() && ratio < 1.5, "{ratio}");
}

#[test]
fn heat_trace_scaling() {
    let p = quartic_plus_square();
    for r in [2.0, 0.5, 1.7] {
        for t in [0.01, 1.0, 100.0] {
            assert!(trace_scaling_deviation(&p, t, r).unwrap() < 1e-8);
        }
    }
}

#[test]
fn classical_riesz_kernel() {
    let p = square();
    for x in [1.0, 0.2, 3.0] {
        let v = riesz_potential(&p, 0.5, x, 0, 0).unwrap();
        assert!(rel(v, riesz_constant(0.5) * x.powf(-0.5)) < 1e-6, "x = {x}");
    }
}

#[test]
fn quartic_riesz_kernel_matches_square_root_of_laplacian() {
    let p = quartic();
    for alpha in [0.3, 0.5, 0.8] {
        let v = riesz_potential(&p, alpha, 1.3, 0, min_spatial_order(&p, alpha)).unwrap();
        assert!(rel(v, riesz_constant(alpha) * 1.3f64.powf(alpha - 1.0)) < 1e-6, "alpha = {alpha}");
    }
}

#[test]
fn riesz_agrees_with_direct_mellin_integral() {
    let p = quartic_plus_square();
    for x in [0.5, 1.0, 4.0] {
        let a = riesz_potential(&p, 0.5, x, 0, 0).unwrap();
        let b = riesz_direct_mellin(&p, 0.5, x).unwrap();
        assert!(rel(a, b) < 1e-6);
    }
}

#[test]
fn riesz_is_independent_of_subtraction_orders() {
    let p = quartic_plus_square();
    let alpha = 0.5;
    let (k1, k2) = (min_heat_order(&p, alpha), min_spatial_order(&p, alpha));
    let base = riesz_potential(&p, alpha, 1.0, k1, k2).unwrap();
    for (a, b) in [(k1 + 1, k2), (k1, k2 + 1), (k1 + 2, k2 + 2)] {
        assert!(rel(riesz_potential(&p, alpha, 1.0, a, b).unwrap(), base) < 1e-6);
    }
}

#[test]
fn poles_are_refused() {
    let p = quartic_plus_square();
    assert!(matches!(check_alpha(&p, 2.0), Err(Error::PoleAlpha { .. })));
    assert!(matches!(riesz_potential(&p, 3.02, 1.0, 0, 2), Err(Error::PoleAlpha { .. })));
}

#[test]
fn negative_order_pairings_apply_the_operator() {
    let p = quartic_plus_square();
    for k in [6, 7, 8] {
        let phi = BumpFunction::new(k);
        let v = riesz_pairing(&p, -4.0, &phi).unwrap();
        assert!(rel(v, phi.quartic_plus_laplacian_at_origin()) < 1e-6, "k = {k}: {v}");
    }
}

#[test]
fn local_and_global_riesz_asymptotics() {
    let p = quartic_plus_square();
    for x in [1e-2, 1e-3] {
        let (lead, constant) = local_leading_terms(&p, 0.5, x).unwrap();
        let v = riesz_potential(&p, 0.5, x, 0, 0).unwrap();
        assert!((v / (lead + constant) - 1.0).abs() < 0.02, "x = {x}");
    }
    for x in [1e2, 1e3] {
        let v = riesz_potential(&p, 0.5, x, 0, 0).unwrap();
        assert!((v / global_leading_term(&p, 0.5, x).unwrap() - 1.0).abs() < 0.02, "x = {x}");
    }
}

#[test]
fn homogeneous_symbol_is_its_own_contraction() {
    let p = quartic();
    for x in [1e-3, 0.4, 30.0] {
        let lead = global_leading_term(&p, 0.5, x).unwrap();
        assert!(rel(riesz_potential(&p, 0.5, x, 0, 0).unwrap(), lead) < 1e-6);
    }
}

#[test]
fn expansion_gains_two_orders_per_term() {
    let g = expansion_order_gain(&quartic_plus_square(), 0.5, &[1, 2], 1e-3, 1e-2).unwrap();
    assert_eq!(g.expected_gain, 2.0);
    assert!((g.gain - 2.0).abs() < 0.1, "{g:?}");
    for (e, want) in g.exponents.iter().zip(&g.expected) {
        assert!(*e >= want - 0.1);
    }
}

#[test]
fn binomial_weights() {
    let w: Vec<f64> = (0..3).map(|k| binomial(-0.5, k)).collect();
    assert_eq!(w, vec![1.0, -0.5, 0.375]);
}

#[test]
fn level_set_measure_and_density() {
    let p = quartic_plus_square();
    assert!((spectral_cdf(&p, 2.0).unwrap() - 1.0 / PI).abs() < 1e-12);
    let q = quartic();
    for lambda in [0.01f64, 1.0, 50.0] {
        let want = lambda.powf(0.25) / (4.0 * PI);
        assert!(rel(density_level_set(&q, lambda).unwrap(), want) < 1e-9);
    }
}

#[test]
fn plancherel_routes_and_end_exponents() {
    let r = plancherel_report(&quartic_plus_square()).unwrap();
    assert!(r.density_route_gap < 0.01);
    assert!(r.laplace_gap < 0.01);
    assert!((r.exponent_small - 0.5).abs() < 0.02);
    assert!((r.exponent_large - 0.25).abs() < 0.02);
    assert!(!r.small_end_matches_q0);
}

#[test]
fn spectral_scaling_identities() {
    let p = quartic_plus_square();
    let xs = [0.0, 0.4, 1.1, 2.5];
    for m in TestMultiplier::ALL {
        for r in [2.0, 0.5, 1.0] {
            let d = spectral_scaling_check(&p, m, 1.0, r, &xs).unwrap();
            assert!(d.kernel < 1e-6 && d.measure < 1e-6, "{} r = {r}: {d:?}", m.name());
        }
    }
}

#[test]
fn gaussian_envelope() {
    let xs: Vec<f64> = (1..=60).map(|i| i as f64 * 0.25).collect();
    let g = gaussian_envelope_fit(&square(), &[1.0], &xs).unwrap();
    assert_eq!(g.exponent, 2.0);
    assert!((g.b - 0.25).abs() < 1e-3);

    let f = gaussian_envelope_fit(&quartic_plus_square(), &[0.1, 1.0], &xs).unwrap();
    assert!((f.exponent - 4.0 / 3.0).abs() < 1e-12);
    assert!(f.b > 0.0);

    let q = gaussian_envelope_fit(&quartic(), &[1.0], &xs).unwrap();
    assert!(q.b > 0.0);
}

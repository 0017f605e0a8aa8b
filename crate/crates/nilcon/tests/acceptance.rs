//! Acceptance criteria 1 to 10. Prints one line per criterion and exits with
//! a failure status if any criterion fails or exceeds its time budget.

use nilcon_core::audit::{audit_random_case, AuditBudget};
use nilcon_core::free::free_nilpotent;
use nilcon_core::geometry::dimension_report;
use nilcon_core::opcalc::{multi_indices, FramePair};
use nilcon_core::sampling::{Sampler, MAX_DIM};
use nilcon_core::scalar::{int, rat, Scalar};
use nilcon_core::spectral::envelope::gaussian_envelope_fit;
use nilcon_core::spectral::expansion::{expansion_order_gain, global_leading_term, local_leading_terms};
use nilcon_core::spectral::plancherel::plancherel_report;
use nilcon_core::spectral::riesz::{min_heat_order, min_spatial_order, riesz_potential};
use nilcon_core::spectral::scaling::{spectral_scaling_check, TestMultiplier};
use nilcon_core::spectral::special::riesz_constant;
use nilcon_core::spectral::trace::{log_grid, trace_bound_ratio, trace_scaling_deviation, trace_slopes};
use nilcon_core::spectral::SymbolOperator;
use nilcon_core::{ContractionFamily, LieAlgebra, Poly, Side, Subspace};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn v(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| int(x)).collect()
}

fn span(n: usize, rows: &[&[i64]]) -> Subspace {
    Subspace::span(n, &rows.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap()
}

fn heisenberg_times_line(degrees: [u32; 4]) -> LieAlgebra {
    LieAlgebra::graded(degrees.to_vec(), &[(0, 1, v(&[0, 0, 1, 0]))]).unwrap()
}

fn heisenberg_times_line_family(degrees: [u32; 4]) -> ContractionFamily {
    ContractionFamily::new(&heisenberg_times_line(degrees), &span(4, &[&[0, 0, 1, -1]])).unwrap()
}

fn product_family() -> ContractionFamily {
    let g = heisenberg_times_line([1, 1, 2, 3]).direct_sum(&heisenberg_times_line([1, 1, 2, 1])).unwrap();
    ContractionFamily::new(&g, &span(8, &[&[0, 0, 1, -1, 0, 0, 0, 0], &[0, 0, 0, 0, 0, 0, 1, -1]])).unwrap()
}

fn free_two_step() -> LieAlgebra {
    free_nilpotent(&[1, 1, 1], 2).unwrap().algebra
}

fn free_two_step_family() -> ContractionFamily {
    let i = span(6, &[&[-1, 0, -1, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[-1, 0, -1, 0, 0, 1]]);
    ContractionFamily::new(&free_two_step(), &i).unwrap()
}

fn quartic_plus_square() -> SymbolOperator {
    SymbolOperator::univariate(&[(1.0, 4), (1.0, 2)]).unwrap()
}

fn square() -> SymbolOperator {
    SymbolOperator::univariate(&[(1.0, 2)]).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn frame_identities() -> Outcome {
    let pair = FramePair::new(&free_two_step_family(), Side::Local).map_err(|e| e.to_string())?;
    let half = Poly::var(1).scale(&rat(1, 2));
    let diff = (&Poly::var(0) - &Poly::var(2)).scale(&rat(1, 2));
    let unit = |j: usize| {
        let mut g = vec![0; 6];
        g[j] = 1;
        g
    };
    let both = |p: Poly| -> BTreeMap<Vec<u32>, Poly> { [(vec![1, 0, 0], p.clone()), (vec![0, 0, 1], p)].into_iter().collect() };
    let forward = [-&half, diff.clone(), half.clone()];
    let mut checked = 0;
    for (j, p) in forward.iter().enumerate() {
        let f = pair.comparison(&unit(j)).map_err(|e| e.to_string())?;
        ensure(f.polys == both(p.clone()), format!("forward formula for X{} differs", j + 1))?;
        let r = pair.reverse_comparison(&unit(j)).map_err(|e| e.to_string())?;
        ensure(r.polys == both(-p), format!("reverse formula for X{} differs", j + 1))?;
        checked += 2;
    }
    Ok(format!("{checked} formulas exact"))
}

fn contraction_examples() -> Outcome {
    let free = free_two_step_family();
    let derived = free_two_step().lower_central_series()[1].clone();
    ensure(*free.limit_ideal(Side::Local) == derived, "free example: local limit ideal is not the derived algebra")?;
    let (t, u) = (span(4, &[&[0, 0, 1, 0]]), span(4, &[&[0, 0, 0, 1]]));
    for (deg, i0, iinf, dims) in [([1, 1, 2, 3], &u, &t, (4, 3)), ([1, 1, 2, 1], &t, &u, (3, 4))] {
        let fam = heisenberg_times_line_family(deg);
        ensure(fam.limit_ideal(Side::Local) == i0 && fam.limit_ideal(Side::Global) == iinf, format!("limit ideals for weights {deg:?}"))?;
        let r = dimension_report(&fam).map_err(|e| e.to_string())?;
        ensure((r.d0, r.d_inf) == dims, format!("growth dimensions for weights {deg:?}: {:?}", (r.d0, r.d_inf)))?;
    }
    let r = dimension_report(&product_family()).map_err(|e| e.to_string())?;
    ensure((r.d0, r.d_inf, r.d1) == (7, 7, 8), format!("product dimensions {:?}", (r.d0, r.d_inf, r.d1)))?;
    Ok("limit ideals and (D0, Dinf, D1) = (4,3,.), (3,4,.), (7,7,8)".into())
}

fn randomized_theorems() -> Outcome {
    const CASES: u64 = 200;
    let failures: Vec<String> = (0..CASES)
        .into_par_iter()
        .flat_map_iter(|k| {
            let mut sampler = Sampler::new(0x5eed_0000 + k);
            match audit_random_case(&mut sampler, AuditBudget::default()) {
                Ok((dim, items)) if dim <= MAX_DIM => items.into_iter().filter(|i| !i.passed).map(|i| format!("case {k}: {}", i.name)).collect(),
                Ok((dim, _)) => vec![format!("case {k}: dimension {dim}")],
                Err(e) => vec![format!("case {k}: {e}")],
            }
        })
        .collect();
    ensure(failures.is_empty(), failures.join(", "))?;
    Ok(format!("{CASES} cases, 0 failures"))
}

fn degree_ledger() -> Outcome {
    let mut checked = 0;
    let families = [free_two_step_family(), heisenberg_times_line_family([1, 1, 2, 3]), heisenberg_times_line_family([1, 1, 2, 1]), product_family()];
    for fam in &families {
        for side in [Side::Local, Side::Global] {
            let pair = FramePair::new(fam, side).map_err(|e| e.to_string())?;
            for gamma in multi_indices(fam.ambient().dim(), 2) {
                for c in [pair.comparison(&gamma), pair.reverse_comparison(&gamma)] {
                    let c = c.map_err(|e| e.to_string())?;
                    ensure(c.degree_ledger_holds(), format!("{side:?} {gamma:?}: {:?}", c.violations()))?;
                    checked += c.polys.len();
                }
            }
        }
    }
    Ok(format!("{checked} comparison polynomials, 0 violations"))
}

fn plancherel() -> Outcome {
    let r = plancherel_report(&quartic_plus_square()).map_err(|e| e.to_string())?;
    ensure(r.density_route_gap <= 0.01 && r.laplace_gap <= 0.01, format!("route gaps {} {}", r.density_route_gap, r.laplace_gap))?;
    ensure((r.exponent_small - 0.5).abs() <= 0.02, format!("small-end exponent {}", r.exponent_small))?;
    ensure((r.exponent_large - 0.25).abs() <= 0.02, format!("large-end exponent {}", r.exponent_large))?;
    Ok(format!(
        "exponents {:.4} / {:.4}, pairing flag {}",
        r.exponent_small, r.exponent_large, r.small_end_matches_q0
    ))
}

fn heat_trace() -> Outcome {
    let p = quartic_plus_square();
    let s = trace_slopes(&p).map_err(|e| e.to_string())?;
    ensure((s.small_t + 0.25).abs() <= 0.01 && (s.large_t + 0.5).abs() <= 0.01, format!("slopes {} {}", s.small_t, s.large_t))?;
    let ratio = trace_bound_ratio(&p, &log_grid(1e-4, 1e4, 17)).map_err(|e| e.to_string())?;
    ensure(ratio.is_finite(), "bound ratio is not finite")?;
    for r in [2.0, 0.5] {
        for t in [0.01, 1.0, 100.0] {
            let d = trace_scaling_deviation(&p, t, r).map_err(|e| e.to_string())?;
            ensure(d <= 1e-8, format!("scaling deviation {d} at r = {r}, t = {t}"))?;
        }
    }
    Ok(format!("slopes {:.4} / {:.4}, bound ratio {ratio:.3}", s.small_t, s.large_t))
}

fn riesz() -> Outcome {
    let p = quartic_plus_square();
    let alpha = 0.5;
    let (k1, k2) = (min_heat_order(&p, alpha), min_spatial_order(&p, alpha));
    let kernel = |x: f64| riesz_potential(&p, alpha, x, k1, k2).map_err(|e| e.to_string());
    let mut worst_local: f64 = 0.0;
    for x in [1e-2, 1e-3] {
        let (lead, constant) = local_leading_terms(&p, alpha, x).map_err(|e| e.to_string())?;
        worst_local = worst_local.max((kernel(x)? / (lead + constant) - 1.0).abs());
    }
    ensure(worst_local <= 0.02, format!("local ratio off by {worst_local}"))?;
    let mut worst_global: f64 = 0.0;
    for x in [1e2, 1e3] {
        worst_global = worst_global.max((kernel(x)? / global_leading_term(&p, alpha, x).map_err(|e| e.to_string())? - 1.0).abs());
    }
    ensure(worst_global <= 0.02, format!("global ratio off by {worst_global}"))?;
    let base = kernel(1.0)?;
    for (a, b) in [(k1 + 1, k2), (k1, k2 + 1), (k1 + 2, k2 + 2)] {
        let d = rel(riesz_potential(&p, alpha, 1.0, a, b).map_err(|e| e.to_string())?, base);
        ensure(d <= 1e-6, format!("orders ({a},{b}) differ by {d}"))?;
    }
    for x in [0.2f64, 1.0, 3.0] {
        let d = rel(riesz_potential(&square(), alpha, x, 0, 0).map_err(|e| e.to_string())?, riesz_constant(alpha) * x.powf(alpha - 1.0));
        ensure(d <= 1e-6, format!("classical kernel off by {d} at x = {x}"))?;
    }
    Ok(format!("local {worst_local:.1e}, global {worst_global:.1e}"))
}

fn expansion_gain() -> Outcome {
    let g = expansion_order_gain(&quartic_plus_square(), 0.5, &[1, 2], 1e-3, 1e-2).map_err(|e| e.to_string())?;
    ensure((g.gain - 2.0).abs() <= 0.1, format!("gain {}", g.gain))?;
    Ok(format!("gain {:.4}", g.gain))
}

fn envelope() -> Outcome {
    let xs: Vec<f64> = (1..=60).map(|i| i as f64 * 0.25).collect();
    let f = gaussian_envelope_fit(&quartic_plus_square(), &[0.1, 1.0], &xs).map_err(|e| e.to_string())?;
    ensure(f.b > 0.0 && (f.exponent - 4.0 / 3.0).abs() < 1e-12, format!("b = {}, exponent {}", f.b, f.exponent))?;
    let g = gaussian_envelope_fit(&square(), &[1.0], &xs).map_err(|e| e.to_string())?;
    ensure(g.exponent == 2.0 && (g.b - 0.25).abs() <= 1e-3, format!("Gaussian control b = {}", g.b))?;
    Ok(format!("b = {:.4} (exponent 4/3), control b = {:.6}", f.b, g.b))
}

fn scaling() -> Outcome {
    let p = quartic_plus_square();
    let mut worst: f64 = 0.0;
    for m in [TestMultiplier::Gaussian, TestMultiplier::ShiftedGaussian, TestMultiplier::WeightedGaussian] {
        for r in [2.0, 0.5] {
            let d = spectral_scaling_check(&p, m, 1.0, r, &[0.0, 0.4, 1.1, 2.5]).map_err(|e| e.to_string())?;
            worst = worst.max(d.kernel).max(d.measure);
        }
    }
    ensure(worst <= 1e-6, format!("deviation {worst}"))?;
    Ok(format!("worst deviation {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, f64, fn() -> Outcome); 10] = [
        ("frame identities of the Heisenberg quotient", 1.0, frame_identities),
        ("contraction examples", 1.0, contraction_examples),
        ("randomized theorem suite", 60.0, randomized_theorems),
        ("comparison-polynomial degree ledger", f64::INFINITY, degree_ledger),
        ("Plancherel density oracle", 30.0, plancherel),
        ("heat-trace two-regime bound", 10.0, heat_trace),
        ("Riesz asymptotics", 60.0, riesz),
        ("expansion order gain", 60.0, expansion_gain),
        ("Gaussian envelope", 30.0, envelope),
        ("scaling identities", 10.0, scaling),
    ];
    let mut failed = 0;
    for (k, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let (status, detail) = match outcome {
            Ok(_) if secs > *budget => ("FAIL", format!("took {secs:.2} s, budget {budget} s")),
            Ok(d) => ("PASS", d),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status}: {name} ({secs:.2} s) {detail}", k + 1);
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Runs the analyses of a [`SpecDocument`] and assembles the report.

use crate::lang::{Directive, Regime, SpecDocument};
use crate::report::{AnalysisRecord, AnalysisReport, ClaimRecord, Value, Verdict, SCHEMA};
use nilcon_core::audit::{audit_family, AuditBudget};
use nilcon_core::geometry::{chunks, dimension_report, finish_volume_fit, prepare_volume};
use nilcon_core::opcalc::{multi_indices, FramePair};
use nilcon_core::sampling::Sampler;
use nilcon_core::scalar::{format_scalar, int, Scalar};
use nilcon_core::spectral::envelope::gaussian_envelope_fit;
use nilcon_core::spectral::expansion::{expansion_order_gain, global_leading_term, local_leading_terms};
use nilcon_core::spectral::heat::{heat_kernel, heat_kernel_fixed, semigroup_deviation};
use nilcon_core::spectral::plancherel::plancherel_report;
use nilcon_core::spectral::riesz::{check_alpha, min_heat_order, min_spatial_order, riesz_potential};
use nilcon_core::spectral::scaling::{spectral_scaling_check, TestMultiplier};
use nilcon_core::spectral::special::riesz_constant;
use nilcon_core::spectral::trace::{log_grid, trace_bound_ratio, trace_scaling_deviation, trace_slopes};
use nilcon_core::spectral::{ModelTriple, SymbolOperator};
use nilcon_core::{ContractionFamily, Error, LieAlgebra, Side, Subspace};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_SAMPLES: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Monte Carlo samples per radius.
    pub samples: u64,
    /// Multiplies every numeric tolerance.
    pub tol_scale: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: DEFAULT_SEED, samples: DEFAULT_SAMPLES, tol_scale: 1.0 }
    }
}

/// Seed of the analysis at `index`, independent of scheduling.
pub fn analysis_seed(master: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index as u64);
    rng.next_u64()
}

pub fn run(doc: &SpecDocument, input: &str, cfg: &RunConfig) -> AnalysisReport {
    let analyses = doc
        .analyses
        .par_iter()
        .enumerate()
        .map(|(index, a)| {
            let seed = analysis_seed(cfg.seed, index);
            let rows = run_one(doc, &a.directive, seed, cfg);
            AnalysisRecord { index, directive: a.text.clone(), seed, rows }
        })
        .collect();
    let digest = Sha256::digest(input.as_bytes());
    AnalysisReport {
        schema: SCHEMA.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        seed: cfg.seed,
        samples: cfg.samples,
        tol_scale: cfg.tol_scale,
        analyses,
    }
}

fn run_one(doc: &SpecDocument, d: &Directive, seed: u64, cfg: &RunConfig) -> Vec<ClaimRecord> {
    let result = match d {
        Directive::Contract { algebra, ideal } => family(doc, algebra, ideal).and_then(|(g, f)| contract(&g, &f, seed)),
        Directive::Frames { algebra, ideal, order } => family(doc, algebra, ideal).and_then(|(g, f)| frames(&g, &f, *order)),
        Directive::Growth { algebra, ideal, radii, regime, parameter } => {
            family(doc, algebra, ideal).and_then(|(_, f)| growth(&f, radii, *regime, *parameter, seed, cfg))
        }
        Directive::Spectral { operator, alpha } => Ok(spectral(&doc.operators[operator].symbol, *alpha, cfg.tol_scale)),
    };
    result.unwrap_or_else(|e| vec![error_row("analysis", &e)])
}

fn error_row(claim: &str, e: &Error) -> ClaimRecord {
    let verdict = match e {
        Error::UnsupportedRange(_) | Error::PoleAlpha { .. } => Verdict::Skipped,
        _ => Verdict::Fail,
    };
    ClaimRecord::new(claim, "computation did not complete", verdict).with("error", Value::Text(e.to_string()))
}

fn family(doc: &SpecDocument, algebra: &str, ideal: &Option<String>) -> Result<(LieAlgebra, ContractionFamily), Error> {
    let g = doc.algebras[algebra].clone();
    let i = match ideal {
        Some(name) => doc.ideals[name].ideal.clone(),
        None => Subspace::zero(g.dim()),
    };
    let f = ContractionFamily::new(&g, &i)?;
    Ok((g, f))
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Local => "local",
        Side::Global => "global",
    }
}

fn format_vector(labels: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (label, c) in labels.iter().zip(v) {
        if *c == int(0) {
            continue;
        }
        let neg = *c < int(0);
        let a = if neg { -c.clone() } else { c.clone() };
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        if a != int(1) {
            out.push_str(&format_scalar(&a));
            out.push('*');
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn basis_texts(labels: &[String], s: &Subspace) -> Value {
    Value::Texts(s.basis().iter().map(|v| format_vector(labels, v)).collect())
}

fn slug(s: &str) -> String {
    s.to_lowercase().split_whitespace().collect::<Vec<_>>().join("-")
}

fn contract(g: &LieAlgebra, fam: &ContractionFamily, seed: u64) -> Result<Vec<ClaimRecord>, Error> {
    let labels = g.labels();
    let derived = g.lower_central_series().get(1).cloned().unwrap_or_else(|| Subspace::zero(g.dim()));
    let mut rows = vec![ClaimRecord::new("ideal", "the ideal being contracted", Verdict::Pass)
        .with("basis", basis_texts(labels, fam.ideal()))
        .with("graded", Value::Bool(fam.ideal().is_graded(fam.degrees())))];
    for side in [Side::Local, Side::Global] {
        let name = side_name(side);
        let limit_ideal = fam.limit_ideal(side);
        let contracted = fam.contracted(side)?;
        let psi: Vec<String> = fam
            .psi(side)
            .entries()
            .filter(|(_, _, l)| l.min_power().is_some())
            .map(|(i, j, l)| format!("{} <- {}: {}", labels[i], labels[j], l.format("s")))
            .collect();
        rows.push(
            ClaimRecord::check(
                &format!("{name}-limit"),
                &format!("{name} limit ideal is a graded ideal of the same dimension"),
                fam.limit_is_graded_ideal(side),
            )
            .with("limit_ideal", basis_texts(labels, limit_ideal))
            .with("equals_derived_algebra", Value::Bool(*limit_ideal == derived))
            .with("limit_group_abelian", Value::Bool(contracted.is_abelian()))
            .with("limit_group_stratified", Value::Bool(contracted.is_stratified()?))
            .with("correction_map", Value::Texts(psi)),
        );
    }
    let lambda: Vec<String> = fam
        .lambda()
        .entries()
        .filter(|(_, _, l)| l.min_power().is_some())
        .map(|(i, j, l)| format!("({i},{j}): {}", l.format("s")))
        .collect();
    rows.push(ClaimRecord::new("lambda", "comparison map between the two contracted brackets", Verdict::Pass).with("entries", Value::Texts(lambda)));

    let mut sampler = Sampler::new(seed);
    for item in audit_family(fam, &mut sampler, AuditBudget::default())? {
        rows.push(ClaimRecord::check(&slug(item.name), item.name, item.passed));
    }

    let dims = dimension_report(fam)?;
    rows.push(
        ClaimRecord::check(
            "dimensions",
            "homogeneous and growth dimensions of the limits and the quotient satisfy the ordering inequalities",
            dims.inequalities_hold(),
        )
        .with("q0", Value::Int(dims.q0 as i64))
        .with("q_inf", Value::Int(dims.q_inf as i64))
        .with("q1", dims.q1.map_or(Value::Text("ungraded".into()), |q| Value::Int(q as i64)))
        .with("d0", Value::Int(dims.d0 as i64))
        .with("d_inf", Value::Int(dims.d_inf as i64))
        .with("d1", Value::Int(dims.d1 as i64))
        .with("local_limit_stratified", Value::Bool(dims.stratified0)),
    );
    Ok(rows)
}

fn monomial_name(names: &[String], gamma: &[u32]) -> String {
    let parts: Vec<String> = gamma
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn frames(g: &LieAlgebra, fam: &ContractionFamily, order: u32) -> Result<Vec<ClaimRecord>, Error> {
    let mut rows = Vec::new();
    let n = g.dim();
    for side in [Side::Local, Side::Global] {
        let name = side_name(side);
        let pair = FramePair::new(fam, side)?;
        let names: Vec<String> = fam.complement_index(side).iter().map(|&k| g.labels()[k].clone()).collect();
        let coords: Vec<String> = names.iter().map(|l| format!("x_{l}")).collect();
        let (mut gammas, mut nonzero, mut violations, mut round_trip, mut limits) = (0i64, 0i64, 0i64, true, true);
        let (mut forward, mut reverse) = (Vec::new(), Vec::new());
        for gamma in multi_indices(n, order) {
            for (dir, c) in [("forward", pair.comparison(&gamma)?), ("reverse", pair.reverse_comparison(&gamma)?)] {
                gammas += 1;
                nonzero += c.polys.len() as i64;
                violations += c.violations().len() as i64;
                round_trip &= c.round_trip;
                limits &= c.scaled_terms_vanish_at_limit() && c.diagonal_vanishes_at_origin();
                if gamma.iter().sum::<u32>() == 1 && !c.polys.is_empty() {
                    let j = gamma.iter().position(|&e| e == 1).expect("unit multi-index");
                    let terms: Vec<String> = c
                        .polys
                        .iter()
                        .map(|(k, p)| format!("({})*{}", p.format_with(&coords), monomial_name(&names, k)))
                        .collect();
                    let line = format!("{}: {}", g.labels()[j], terms.join(" + "));
                    if dir == "forward" {
                        forward.push(line);
                    } else {
                        reverse.push(line);
                    }
                }
            }
        }
        rows.push(
            ClaimRecord::check(
                &format!("{name}-frame-comparison"),
                &format!("{name} frame comparison polynomials obey the weighted degree bounds and recombine exactly"),
                violations == 0 && round_trip && limits,
            )
            .with("multi_indices", Value::Int(gammas))
            .with("nonzero_polynomials", Value::Int(nonzero))
            .with("degree_violations", Value::Int(violations))
            .with("first_order_forward", Value::Texts(forward))
            .with("first_order_reverse", Value::Texts(reverse)),
        );
    }
    Ok(rows)
}

fn growth(fam: &ContractionFamily, radii: &[f64], regime: Regime, s: f64, seed: u64, cfg: &RunConfig) -> Result<Vec<ClaimRecord>, Error> {
    let ball = prepare_volume(fam, s, radii, cfg.samples)?;
    let hits: Vec<u64> = radii
        .par_iter()
        .enumerate()
        .map(|(i, &r)| chunks(i, cfg.samples).par_iter().map(|&(stream, n)| ball.count_chunk(r, seed, stream, n)).sum())
        .collect();
    let fit = finish_volume_fit(&ball, radii, cfg.samples, hits)?;
    let dims = dimension_report(fam)?;
    let (expected, which) = match regime {
        Regime::Small => (dims.q0 as f64, "local homogeneous dimension"),
        Regime::Large => (dims.q_inf as f64, "global homogeneous dimension"),
    };
    let tol = 0.4 * cfg.tol_scale;
    Ok(vec![
        ClaimRecord::check(
            "volume-growth",
            &format!("surrogate ball volumes scale with the {which}"),
            (fit.exponent - expected).abs() <= tol,
        )
        .with("radii", Value::floats(&fit.radii))
        .with("volumes", Value::floats(&fit.volumes))
        .with("exponent", Value::float(fit.exponent))
        .with("expected", Value::float(expected))
        .with("growth_dimension", Value::Int(dims.d1 as i64))
        .tolerance(tol),
        ClaimRecord::check("volume-monotone", "surrogate ball volumes increase with the radius", fit.volumes.windows(2).all(|w| w[0] <= w[1])),
    ])
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Evaluates a numeric claim, turning library errors into report rows.
fn numeric(claim: &str, reference: &str, tol: f64, f: impl FnOnce() -> Result<(f64, Vec<(&'static str, Value)>), Error>) -> ClaimRecord {
    match f() {
        Ok((deviation, extra)) => {
            let mut r = ClaimRecord::check(claim, reference, deviation <= tol).with("deviation", Value::float(deviation)).tolerance(tol);
            for (k, v) in extra {
                r = r.with(k, v);
            }
            r
        }
        Err(e) => {
            let mut r = error_row(claim, &e);
            r.reference = reference.to_string();
            r.tolerance = Some(tol);
            r
        }
    }
}

fn skipped(claim: &str, reference: &str, why: &str) -> ClaimRecord {
    ClaimRecord::new(claim, reference, Verdict::Skipped).with("reason", Value::Text(why.to_string()))
}

fn spectral(p: &SymbolOperator, alpha: f64, scale: f64) -> Vec<ClaimRecord> {
    let triple = ModelTriple::new(p);
    let (big, small) = triple.dominance_ratios(1e4, 1e-4);
    let mut rows = vec![ClaimRecord::check(
        "model-triple",
        "the symbol is dominated by its top part at high frequency and by its bottom part at low frequency",
        (big - 1.0).abs() < 1e-3 && (small - 1.0).abs() < 1e-3,
    )
    .with("q0", Value::float(triple.q0))
    .with("q_inf", Value::float(triple.q_inf))
    .with("degree", Value::Int(p.delta() as i64))];

    let origin_axis = |x: f64| {
        let mut v = vec![0.0; p.dim()];
        v[0] = x;
        v
    };
    rows.push(numeric("heat-kernel-routes", "adaptive and fixed-grid heat kernel quadratures agree", 1e-8 * scale, || {
        let mut worst: f64 = 0.0;
        for t in [0.01, 0.1, 1.0, 10.0] {
            for x in [0.0, 0.5, 2.0] {
                let v = origin_axis(x);
                worst = worst.max((heat_kernel(p, t, &v)? - heat_kernel_fixed(p, t, &v)?).abs());
            }
        }
        Ok((worst, vec![]))
    }));
    rows.push(numeric("heat-semigroup", "heat kernels compose as a semigroup", 1e-6 * scale, || {
        let mut worst: f64 = 0.0;
        for x in [0.0, 0.8, 2.5] {
            worst = worst.max(semigroup_deviation(p, 0.3, 0.7, x)?);
        }
        Ok((worst, vec![]))
    }));
    rows.push(numeric("heat-trace-slopes", "heat trace decays like t^(-Q0/degree) for small t and t^(-Qinf/degree) for large t", 0.01 * scale, || {
        let s = trace_slopes(p)?;
        let dev = (s.small_t - s.expected_small).abs().max((s.large_t - s.expected_large).abs());
        Ok((
            dev,
            vec![("slopes", Value::floats(&[s.small_t, s.large_t])), ("expected", Value::floats(&[s.expected_small, s.expected_large]))],
        ))
    }));
    rows.push(numeric("heat-trace-bound", "heat trace stays below a constant multiple of the two-regime minimum bound", 4.0 * scale, || {
        let ratio = trace_bound_ratio(p, &log_grid(1e-4, 1e4, 17))?;
        Ok((if ratio.is_finite() { ratio } else { f64::INFINITY }, vec![]))
    }));
    rows.push(numeric("heat-trace-scaling", "heat trace transforms exactly under coefficient dilation", 1e-8 * scale, || {
        let mut worst: f64 = 0.0;
        for r in [2.0, 0.5, 1.7] {
            for t in [0.01, 1.0, 100.0] {
                worst = worst.max(trace_scaling_deviation(p, t, r)?);
            }
        }
        Ok((worst, vec![]))
    }));

    match plancherel_report(p) {
        Ok(r) => {
            let tol = 0.01 * scale;
            rows.push(
                ClaimRecord::check("plancherel-routes", "level-set density agrees with the differenced spectral function and with the heat trace", r.density_route_gap.max(r.laplace_gap) <= tol)
                    .with("density_route_gap", Value::float(r.density_route_gap))
                    .with("laplace_gap", Value::float(r.laplace_gap))
                    .tolerance(tol),
            );
            let tol = 0.02 * scale;
            rows.push(
                ClaimRecord::check(
                    "plancherel-exponents",
                    "density exponents at both ends of the spectrum match the level-set oracle",
                    (r.exponent_small - r.expected_small).abs() <= tol && (r.exponent_large - r.expected_large).abs() <= tol,
                )
                .with("fitted", Value::floats(&[r.exponent_small, r.exponent_large]))
                .with("expected", Value::floats(&[r.expected_small, r.expected_large]))
                .with("small_end_matches_local_dimension", Value::Bool(r.small_end_matches_q0))
                .tolerance(tol),
            );
        }
        Err(e) => rows.push(error_row("plancherel", &e)),
    }

    rows.push(numeric("spectral-scaling", "multiplier kernels and spectral measures transform exactly under dilation", 1e-6 * scale, || {
        let mut worst: f64 = 0.0;
        for m in TestMultiplier::ALL {
            for r in [2.0, 0.5] {
                let d = spectral_scaling_check(p, m, 1.0, r, &[0.0, 0.4, 1.1, 2.5])?;
                worst = worst.max(d.kernel).max(d.measure);
            }
        }
        Ok((worst, vec![]))
    }));

    rows.extend(riesz_rows(p, alpha, scale));

    rows.push(match gaussian_envelope_fit(p, &[0.1, 1.0], &(1..=60).map(|i| i as f64 * 0.25).collect::<Vec<_>>()) {
        Ok(f) => ClaimRecord::check("gaussian-envelope", "heat kernels admit a Gaussian-type envelope with a positive rate", f.b > 0.0 && f.exponent.is_finite())
            .with("rate", Value::float(f.b))
            .with("exponent", Value::float(f.exponent))
            .with("points", Value::Int(f.points_used as i64)),
        Err(e) => error_row("gaussian-envelope", &e),
    });
    rows
}

fn riesz_rows(p: &SymbolOperator, alpha: f64, scale: f64) -> Vec<ClaimRecord> {
    const REF_ORDER: &str = "Riesz kernel does not depend on the admissible subtraction orders";
    if p.dim() != 1 {
        return vec![skipped("riesz", REF_ORDER, "Riesz kernels are implemented on the line only")];
    }
    if let Err(e) = check_alpha(p, alpha) {
        return vec![error_row("riesz", &e)];
    }
    let (k1, k2) = (min_heat_order(p, alpha), min_spatial_order(p, alpha));
    let kernel = move |x: f64| riesz_potential(p, alpha, x, k1, k2);
    let mut rows = vec![numeric("riesz-order-independence", REF_ORDER, 1e-6 * scale, || {
        let base = kernel(1.0)?;
        let mut worst: f64 = 0.0;
        for (a, b) in [(k1 + 1, k2), (k1, k2 + 1), (k1 + 2, k2 + 2)] {
            worst = worst.max(rel(riesz_potential(p, alpha, 1.0, a, b)?, base));
        }
        Ok((worst, vec![("orders", Value::Texts(vec![format!("heat {k1}"), format!("spatial {k2}")]))]))
    })];

    if p.is_homogeneous() && alpha < 1.0 {
        rows.push(numeric("riesz-classical", "Riesz kernel of a pure power equals the classical fractional kernel", 1e-6 * scale, || {
            let (c, delta) = (p.terms()[0].0, p.delta() as f64);
            let mut worst: f64 = 0.0;
            for x in [0.2f64, 1.0, 3.0] {
                let want = c.powf(-alpha / delta) * riesz_constant(alpha) * x.powf(alpha - 1.0);
                worst = worst.max(rel(kernel(x)?, want));
            }
            Ok((worst, vec![]))
        }));
    }

    rows.push(numeric("riesz-global", "Riesz kernel approaches the kernel of the bottom part at large distance", 0.02 * scale, || {
        let mut ratios = Vec::new();
        for x in [1e2, 1e3] {
            ratios.push(kernel(x)? / global_leading_term(p, alpha, x)?);
        }
        let dev = ratios.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
        Ok((dev, vec![("ratios", Value::floats(&ratios))]))
    }));

    if p.as_binomial().is_ok() {
        rows.push(numeric("riesz-local", "Riesz kernel approaches its local leading terms at small distance", 0.02 * scale, || {
            let mut ratios = Vec::new();
            for x in [1e-2, 1e-3] {
                let (lead, constant) = local_leading_terms(p, alpha, x)?;
                ratios.push(kernel(x)? / (lead + constant));
            }
            let dev = ratios.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
            Ok((dev, vec![("ratios", Value::floats(&ratios))]))
        }));
        rows.push(numeric("expansion-order-gain", "each extra expansion term improves the local error exponent by the degree gap", 0.1 * scale, || {
            let g = expansion_order_gain(p, alpha, &[1, 2], 1e-3, 1e-2)?;
            Ok((
                (g.gain - g.expected_gain).abs(),
                vec![
                    ("gain", Value::float(g.gain)),
                    ("expected_gain", Value::float(g.expected_gain)),
                    ("error_exponents", Value::floats(&g.exponents)),
                ],
            ))
        }));
    } else if p.is_homogeneous() {
        rows.push(numeric("riesz-local", "Riesz kernel of a pure power is its own leading term at small distance", 0.02 * scale, || {
            let mut ratios = Vec::new();
            for x in [1e-2, 1e-3] {
                ratios.push(kernel(x)? / global_leading_term(p, alpha, x)?);
            }
            let dev = ratios.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
            Ok((dev, vec![("ratios", Value::floats(&ratios))]))
        }));
    } else {
        let why = "the local expansion is implemented for two-term symbols";
        rows.push(skipped("riesz-local", "Riesz kernel approaches its local leading terms at small distance", why));
        rows.push(skipped("expansion-order-gain", "each extra expansion term improves the local error exponent by the degree gap", why));
    }
    rows
}

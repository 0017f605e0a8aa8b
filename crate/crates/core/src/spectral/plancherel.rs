//! The spectral measure `β` of the model operator: `β([0, λ]) = (2π)^{-d} |{p ≤ λ}|`,
//! and its density `f` against `dλ/λ`.

use super::heat::heat_trace;
use super::quad::{adaptive, Tolerance};
use super::symbol::SymbolOperator;
use super::trace::{log_grid, loglog_slope};
use crate::error::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// `β([0, λ])`.
pub fn spectral_cdf(p: &SymbolOperator, lambda: f64) -> Result<f64> {
    if lambda <= 0.0 {
        return Ok(0.0);
    }
    match p.dim() {
        1 => Ok(p.level_radius(lambda) / PI),
        2 => {
            let axis = |k: usize| {
                let f = move |r: f64| {
                    let mut xi = [0.0; 2];
                    xi[k] = r;
                    p.eval(&xi)
                };
                p.level_radius_along(&f, lambda)
            };
            let r0 = axis(0);
            let width = |a: f64| {
                if p.eval(&[a, 0.0]) >= lambda {
                    return 0.0;
                }
                p.level_radius_along(&|b| p.eval(&[a, b]), lambda)
            };
            let area = 4.0 * adaptive(&width, 0.0, r0, Tolerance::new(1e-300, 1e-12))?;
            Ok(area / (4.0 * PI * PI))
        }
        d => Err(Error::UnsupportedRange(format!("spectral measures are computed for d <= 2, got {d}"))),
    }
}

/// Density against `dλ/λ` from the level-set geometry: in one dimension
/// `f(λ) = λ / (π p'(R))` with `p(R) = λ`.
pub fn density_level_set(p: &SymbolOperator, lambda: f64) -> Result<f64> {
    if p.dim() != 1 {
        return density_numeric(p, lambda);
    }
    let r = p.level_radius(lambda);
    Ok(lambda / (PI * p.derivative1(r)))
}

/// Density as a central difference of `β([0, λ])` in `log λ`.
pub fn density_numeric(p: &SymbolOperator, lambda: f64) -> Result<f64> {
    let h = 1e-3;
    let up = spectral_cdf(p, lambda * libm::exp(h))?;
    let down = spectral_cdf(p, lambda * libm::exp(-h))?;
    Ok((up - down) / (2.0 * h))
}

/// `∫ e^{-tλ} f(λ) dλ/λ`, integrated in `u = log λ`.
pub fn laplace_of_density(p: &SymbolOperator, t: f64) -> Result<f64> {
    let failure = core::cell::Cell::new(None);
    let g = |u: f64| {
        let lambda = libm::exp(u);
        match density_level_set(p, lambda) {
            Ok(f) => libm::exp(-t * lambda) * f,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let hi = libm::log(80.0 / t);
    let lo = hi - 500.0;
    let mut edges = Vec::new();
    let mut u = lo;
    while u < hi {
        edges.push(u);
        u += 10.0;
    }
    edges.push(hi);
    let v = super::quad::adaptive_panels(&g, &edges, Tolerance::new(1e-300, 1e-12))?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(v)
}

/// Outcome of the density checks.
#[derive(Clone, Debug, PartialEq)]
pub struct PlancherelReport {
    /// Largest relative gap between the closed-form and the differenced density.
    pub density_route_gap: f64,
    /// Largest relative gap between the Laplace transform of the density and `H(t)`.
    pub laplace_gap: f64,
    pub exponent_small: f64,
    pub exponent_large: f64,
    /// `Q∞/δ`, the exponent the level sets predict as `λ → 0`.
    pub expected_small: f64,
    /// `Q₀/δ`, predicted as `λ → ∞`.
    pub expected_large: f64,
    /// Whether the fitted small-`λ` exponent sits nearer `Q₀/δ` than `Q∞/δ`.
    pub small_end_matches_q0: bool,
}

pub fn plancherel_report(p: &SymbolOperator) -> Result<PlancherelReport> {
    let mut route_gap: f64 = 0.0;
    for lambda in log_grid(1e-3, 1e3, 25) {
        let a = density_level_set(p, lambda)?;
        let b = density_numeric(p, lambda)?;
        route_gap = route_gap.max((a - b).abs() / a.abs());
    }
    let mut laplace_gap: f64 = 0.0;
    for t in log_grid(1e-3, 1e3, 13) {
        let a = laplace_of_density(p, t)?;
        let b = heat_trace(p, t)?;
        laplace_gap = laplace_gap.max((a - b).abs() / b.abs());
    }
    let f = |l: f64| density_level_set(p, l);
    let exponent_small = loglog_slope(&f, 1e-8, 1e-6, 7)?;
    let exponent_large = loglog_slope(&f, 1e6, 1e8, 7)?;
    let delta = p.delta() as f64;
    let (e0, ei) = (p.q0() / delta, p.q_inf() / delta);
    Ok(PlancherelReport {
        density_route_gap: route_gap,
        laplace_gap,
        exponent_small,
        exponent_large,
        expected_small: ei,
        expected_large: e0,
        small_end_matches_q0: (exponent_small - e0).abs() < (exponent_small - ei).abs(),
    })
}

//! Heat kernels `h_t(x) = (2π)^{-d} ∫ e^{-t p(ξ)} e^{i x·ξ} dξ` and heat traces `h_t(0)`.

use super::quad::{adaptive, adaptive_panels, panel_edges, GaussLegendre, Tolerance};
use super::symbol::SymbolOperator;
use crate::error::{Error, Result};
use alloc::format;
use core::f64::consts::PI;

/// `e^{-CUTOFF_LEVEL}` is negligible against every quantity we compare.
pub const CUTOFF_LEVEL: f64 = 45.0;
const MAX_PANELS: usize = 200_000;

fn check(p: &SymbolOperator, t: f64, x: &[f64]) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    if x.len() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: x.len() });
    }
    if p.dim() > 2 {
        return Err(Error::UnsupportedRange(format!("heat kernels are computed for d <= 2, got {}", p.dim())));
    }
    if !p.is_coercive() {
        return Err(Error::QuadratureFailure(format!("symbol is not coercive; the frequency tail does not converge")));
    }
    Ok(())
}

fn edges_for(cut: f64, x: f64) -> alloc::vec::Vec<f64> {
    let w = if x != 0.0 { (PI / x.abs()).min(cut / 4.0) } else { cut / 4.0 };
    panel_edges(0.0, cut, w, MAX_PANELS)
}

/// Heat kernel by adaptive Gauss–Kronrod on half-period panels.
pub fn heat_kernel(p: &SymbolOperator, t: f64, x: &[f64]) -> Result<f64> {
    check(p, t, x)?;
    let c0 = p.axis_cutoff(0, t, CUTOFF_LEVEL);
    let tol = Tolerance::new(1e-15 * c0, 1e-13);
    if p.dim() == 1 {
        let f = |xi: f64| libm::exp(-t * p.eval1(xi)) * libm::cos(x[0] * xi);
        return Ok(adaptive_panels(&f, &edges_for(c0, x[0]), tol)? / PI);
    }
    let c1 = p.axis_cutoff(1, t, CUTOFF_LEVEL);
    let inner_edges = edges_for(c1, x[1]);
    let inner_tol = Tolerance::new(1e-14 * c1, 1e-12);
    let failure = core::cell::Cell::new(None);
    let outer = |a: f64| {
        let g = |b: f64| libm::exp(-t * p.eval(&[a, b])) * libm::cos(x[1] * b);
        match adaptive_panels(&g, &inner_edges, inner_tol) {
            Ok(v) => v * libm::cos(x[0] * a),
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let v = adaptive_panels(&outer, &edges_for(c0, x[0]), Tolerance::new(1e-14 * c0 * c1, 1e-11))?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(v / (PI * PI))
}

/// Heat kernel by a fixed composite Gauss–Legendre rule (independent route).
pub fn heat_kernel_fixed(p: &SymbolOperator, t: f64, x: &[f64]) -> Result<f64> {
    check(p, t, x)?;
    let rule = GaussLegendre::new(24);
    let fine = |cut: f64, x: f64| {
        let w = if x != 0.0 { (PI / x.abs()).min(cut / 64.0) } else { cut / 64.0 };
        panel_edges(0.0, cut, w, MAX_PANELS)
    };
    let c0 = p.axis_cutoff(0, t, CUTOFF_LEVEL);
    if p.dim() == 1 {
        let f = |xi: f64| libm::exp(-t * p.eval1(xi)) * libm::cos(x[0] * xi);
        return Ok(rule.composite(&f, &fine(c0, x[0])) / PI);
    }
    let c1 = p.axis_cutoff(1, t, CUTOFF_LEVEL);
    let e1 = fine(c1, x[1]);
    let outer = |a: f64| {
        let g = |b: f64| libm::exp(-t * p.eval(&[a, b])) * libm::cos(x[1] * b);
        rule.composite(&g, &e1) * libm::cos(x[0] * a)
    };
    Ok(rule.composite(&outer, &fine(c0, x[0])) / (PI * PI))
}

/// `H(t) = h_t(0) = (2π)^{-d} ∫ e^{-t p(ξ)} dξ`.
pub fn heat_trace(p: &SymbolOperator, t: f64) -> Result<f64> {
    let zero = alloc::vec![0.0; p.dim()];
    check(p, t, &zero)?;
    let c0 = p.axis_cutoff(0, t, CUTOFF_LEVEL);
    let tol = Tolerance::new(1e-300, 1e-13);
    if p.dim() == 1 {
        let f = |xi: f64| libm::exp(-t * p.eval1(xi));
        return Ok(adaptive(&f, 0.0, c0, tol)? / PI);
    }
    let c1 = p.axis_cutoff(1, t, CUTOFF_LEVEL);
    let rule = GaussLegendre::new(32);
    let e1 = panel_edges(0.0, c1, c1 / 16.0, 16);
    let outer = |a: f64| {
        let g = |b: f64| libm::exp(-t * p.eval(&[a, b]));
        rule.composite(&g, &e1)
    };
    Ok(adaptive(&outer, 0.0, c0, Tolerance::new(1e-300, 1e-11))? / (PI * PI))
}

/// Semigroup check: `h_{t+s}(x)` against the spatial convolution `h_t * h_s`
/// in one dimension. Returns the absolute deviation.
pub fn semigroup_deviation(p: &SymbolOperator, t: f64, s: f64, x: f64) -> Result<f64> {
    p.require_1d()?;
    let lhs = heat_kernel(p, t + s, &[x])?;
    let reach = spatial_reach(p, t.max(s));
    let failure = core::cell::Cell::new(None);
    let f = |y: f64| match (heat_kernel(p, t, &[x - y]), heat_kernel(p, s, &[y])) {
        (Ok(a), Ok(b)) => a * b,
        (Err(e), _) | (_, Err(e)) => {
            failure.set(Some(e));
            0.0
        }
    };
    let edges = panel_edges(-reach, reach, reach / 32.0, 1024);
    let rhs = adaptive_panels(&f, &edges, Tolerance::new(1e-13, 1e-10))?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok((lhs - rhs).abs())
}

/// Half-width of an interval outside which `h_t` is below roundoff, from
/// the scale `t^{1/w}` of each term.
pub fn spatial_reach(p: &SymbolOperator, t: f64) -> f64 {
    let scale = p
        .terms()
        .iter()
        .map(|(c, e)| libm::pow(c * t, 1.0 / e[0] as f64))
        .fold(0.0, f64::max);
    40.0 * scale.max(1e-3)
}

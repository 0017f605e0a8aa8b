use super::heat::heat_trace;
use super::symbol::SymbolOperator;
use crate::error::Result;
use crate::geometry::linear_fit;
use alloc::vec::Vec;

/// Log-spaced points `lo..=hi` (inclusive), `n ≥ 2`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (libm::log(lo), libm::log(hi));
    (0..n).map(|i| libm::exp(a + (b - a) * i as f64 / (n - 1) as f64)).collect()
}

/// Slope of `log y` against `log x` over a log-spaced window.
pub fn loglog_slope(f: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64, n: usize) -> Result<f64> {
    let xs = log_grid(lo, hi, n);
    let mut lx = Vec::with_capacity(n);
    let mut ly = Vec::with_capacity(n);
    for &x in &xs {
        lx.push(libm::log(x));
        ly.push(libm::log(f(x)?.abs()));
    }
    Ok(linear_fit(&lx, &ly)?.0)
}

/// Fitted slopes of `log H(t)` at small and large `t`, with the values
/// `-Q₀/δ` and `-Q∞/δ` they should approach.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceSlopes {
    pub small_t: f64,
    pub large_t: f64,
    pub expected_small: f64,
    pub expected_large: f64,
}

pub fn trace_slopes(p: &SymbolOperator) -> Result<TraceSlopes> {
    let h = |t: f64| heat_trace(p, t);
    let delta = p.delta() as f64;
    Ok(TraceSlopes {
        small_t: loglog_slope(&h, 1e-6, 1e-4, 9)?,
        large_t: loglog_slope(&h, 1e4, 1e6, 9)?,
        expected_small: -p.q0() / delta,
        expected_large: -p.q_inf() / delta,
    })
}

/// Relative deviation of `H_{r·a}(t)` from `r^{-Q} H_a(t)`, where `r·a`
/// rescales each coefficient by `r` to its weighted degree.
pub fn trace_scaling_deviation(p: &SymbolOperator, t: f64, r: f64) -> Result<f64> {
    let lhs = heat_trace(&p.dilate_coefficients(r), t)?;
    let rhs = libm::pow(r, -(p.weight_sum() as f64)) * heat_trace(p, t)?;
    Ok((lhs - rhs).abs() / rhs.abs())
}

/// The two-sided bound `H(t) ≤ C min(t^{-Q₀/δ}, t^{-Q∞/δ})`: the largest
/// ratio of `H` to the bound over the grid, with `C` fitted at `t = 1`.
pub fn trace_bound_ratio(p: &SymbolOperator, ts: &[f64]) -> Result<f64> {
    let delta = p.delta() as f64;
    let c = heat_trace(p, 1.0)?;
    let mut worst: f64 = 0.0;
    for &t in ts {
        let bound = c * libm::pow(t, -p.q0() / delta).min(libm::pow(t, -p.q_inf() / delta));
        worst = worst.max(heat_trace(p, t)? / bound);
    }
    Ok(worst)
}

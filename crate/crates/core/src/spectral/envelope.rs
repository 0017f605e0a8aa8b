use super::heat::heat_kernel;
use super::symbol::SymbolOperator;
use crate::error::{Error, Result};
use alloc::format;

/// Result of fitting `|h_t(x)| ≤ C t^{-Q₀/δ} exp(−b (m(x)/t^{1/δ})^{δ/(δ−1)})`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeFit {
    pub b: f64,
    pub c: f64,
    pub exponent: f64,
    pub points_used: usize,
}

/// `m(x) = min(|x|^{1/Q₀}, |x|^{1/Q∞})`.
pub fn surrogate_distance(p: &SymbolOperator, x: f64) -> f64 {
    let ax = x.abs();
    libm::pow(ax, 1.0 / p.q0()).min(libm::pow(ax, 1.0 / p.q_inf()))
}

/// Samples below this fraction of `h_t(0)` are dominated by quadrature error.
pub const NOISE_FLOOR: f64 = 1e-9;

pub fn gaussian_envelope_fit(p: &SymbolOperator, ts: &[f64], xs: &[f64]) -> Result<EnvelopeFit> {
    p.require_1d()?;
    let delta = p.delta() as f64;
    if delta <= 1.0 {
        return Err(Error::UnsupportedRange(format!("the envelope exponent needs delta > 1")));
    }
    let exponent = delta / (delta - 1.0);
    let q0 = p.q0();
    let mut samples = alloc::vec::Vec::new();
    let mut c: f64 = 0.0;
    for &t in ts {
        let tau = libm::pow(t, 1.0 / delta);
        let h0 = heat_kernel(p, t, &[0.0])?;
        c = c.max(h0.abs() * libm::pow(t, q0 / delta));
        for &x in xs {
            let h = heat_kernel(p, t, &[x])?;
            let m = surrogate_distance(p, x);
            if m <= tau {
                c = c.max(h.abs() * libm::pow(t, q0 / delta));
            } else if h.abs() >= NOISE_FLOOR * h0.abs() {
                samples.push((t, m / tau, h.abs()));
            }
        }
    }
    if samples.is_empty() {
        return Err(Error::FitFailure(format!("no grid point lies outside the unit ball above the noise floor")));
    }
    let b = samples
        .iter()
        .map(|&(t, ratio, h)| -libm::log(h / (c * libm::pow(t, -q0 / delta))) / libm::pow(ratio, exponent))
        .fold(f64::INFINITY, f64::min);
    if !(b > 0.0) {
        return Err(Error::FitFailure(format!("fitted envelope constant {b} is not positive")));
    }
    Ok(EnvelopeFit { b, c, exponent, points_used: samples.len() })
}

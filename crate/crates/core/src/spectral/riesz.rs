//! One-dimensional Riesz potentials `I_α = 𝓛^{-α/δ}δ₀`, evaluated pointwise
//! through the split `∫₀¹ + ∫₁^∞` of the heat-kernel Mellin integral.

use super::heat::heat_kernel;
use super::quad::{adaptive, adaptive_panels, panel_edges, GaussLegendre, Tolerance};
use super::special::{factorial, pochhammer, regularized_upper_gamma, rgamma, upper_tail_weight};
use super::symbol::SymbolOperator;
use crate::error::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use core::cell::Cell;
use core::f64::consts::PI;

/// Distance below which `α` counts as sitting on a pole `Q∞ + n`.
pub const POLE_MARGIN: f64 = 0.05;

pub fn check_alpha(p: &SymbolOperator, alpha: f64) -> Result<()> {
    if !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha must be finite")));
    }
    let q = p.q_inf();
    if alpha > q - POLE_MARGIN {
        let pole = q + libm::round(alpha - q).max(0.0);
        if (alpha - pole).abs() < POLE_MARGIN {
            return Err(Error::PoleAlpha { alpha, pole });
        }
    }
    Ok(())
}

/// Smallest admissible spatial subtraction order.
pub fn min_spatial_order(p: &SymbolOperator, alpha: f64) -> u32 {
    let q = p.q_inf();
    if alpha < q {
        0
    } else {
        libm::ceil(alpha - q) as u32 + 1
    }
}

/// Smallest admissible heat subtraction order.
pub fn min_heat_order(p: &SymbolOperator, alpha: f64) -> u32 {
    libm::ceil(-alpha / p.delta() as f64).max(0.0) as u32
}

/// Number of even Taylor terms `x^{2m}` of homogeneous degree below `k2`.
fn subtracted_terms(p: &SymbolOperator, k2: u32) -> usize {
    let q = p.q_inf();
    (0..).take_while(|&m| 2.0 * m as f64 * q < k2 as f64).count()
}

fn cos_taylor(z: f64, terms: usize) -> f64 {
    let mut s = 0.0;
    let mut t = 1.0;
    for m in 0..terms {
        s += t;
        t *= -z * z / (((2 * m + 1) * (2 * m + 2)) as f64);
    }
    s
}

/// `cos z` minus its first `terms` even Taylor terms, stable for small `z`.
pub fn cos_remainder(z: f64, terms: usize) -> f64 {
    if z.abs() > 2.0 {
        return libm::cos(z) - cos_taylor(z, terms);
    }
    let mut t = 1.0;
    for m in 0..terms {
        t *= -z * z / (((2 * m + 1) * (2 * m + 2)) as f64);
    }
    let mut s = 0.0;
    let mut m = terms;
    loop {
        s += t;
        t *= -z * z / (((2 * m + 1) * (2 * m + 2)) as f64);
        m += 1;
        if t.abs() <= 1e-18 * s.abs() || t == 0.0 {
            return s + t;
        }
    }
}

/// `∫₀^∞ ξ^{s-1} g(ξ) dξ` for `g = upper_tail_weight(a, p(ξ))`, continued
/// through the small-`ξ` behaviour `g ≈ a∞^{-a} ξ^{-c}` when needed.
fn tail_weight_moment(p: &SymbolOperator, a: f64, s: f64) -> Result<f64> {
    let g = |xi: f64| upper_tail_weight(a, p.eval1(xi));
    let glob = p.global_part();
    let (coef, e) = (glob.terms()[0].0, glob.terms()[0].1[0] as f64);
    let c = e * a;
    let cut = p.axis_cutoff(0, 1.0, 60.0);
    let tol = Tolerance::new(1e-300, 1e-12);
    let hi = if cut > 1.0 { adaptive(&|xi: f64| libm::pow(xi, s - 1.0) * g(xi), 1.0, cut, tol)? } else { 0.0 };
    let top = cut.min(1.0);
    if s - c > 0.0 {
        let lo = adaptive(&|xi: f64| libm::pow(xi, s - 1.0) * g(xi), 0.0, top, tol)?;
        return Ok(lo + hi);
    }
    let next = p.terms().iter().map(|(_, k)| k[0] as f64).filter(|&k| k > e).fold(f64::INFINITY, f64::min);
    if s - c + (next - e) <= 0.0 {
        return Err(Error::UnsupportedRange(format!("moment {s} needs more than one small-frequency subtraction")));
    }
    let lead = libm::pow(coef, -a);
    let sub = |xi: f64| libm::pow(xi, s - 1.0) * (g(xi) - lead * libm::pow(xi, -c));
    let lo = adaptive(&sub, 0.0, top, tol)?;
    let mut extra = lead * libm::pow(top, s - c) / (s - c);
    if top < 1.0 {
        extra += adaptive(&|xi: f64| -lead * libm::pow(xi, s - 1.0 - c), top, 1.0, tol)?;
    }
    Ok(lo + extra + hi)
}

/// Pointwise Riesz potential `I_α(x)` with heat subtraction order `k1` and
/// spatial subtraction order `k2`; the subtracted Taylor terms are restored
/// from their analytically continued coefficients.
pub fn riesz_potential(p: &SymbolOperator, alpha: f64, x: f64, k1: u32, k2: u32) -> Result<f64> {
    p.require_1d()?;
    check_alpha(p, alpha)?;
    if x == 0.0 {
        return Err(Error::InvalidArgument(format!("x must be nonzero")));
    }
    if k1 < min_heat_order(p, alpha) || k2 < min_spatial_order(p, alpha) {
        return Err(Error::InvalidArgument(format!(
            "subtraction orders ({k1}, {k2}) below the minimum ({}, {})",
            min_heat_order(p, alpha),
            min_spatial_order(p, alpha)
        )));
    }
    let x = x.abs();
    let a = alpha / p.delta() as f64;
    let terms = subtracted_terms(p, k2);
    let e_min = p.global_part().terms()[0].1[0] as f64;
    if 2.0 * terms as f64 <= e_min * a - 1.0 {
        return Err(Error::InvalidArgument(format!("spatial order {k2} leaves a divergent frequency integral")));
    }
    Ok(small_time_part(p, a, x)? + large_time_part(p, a, x, terms)? + restored_polynomial(p, a, x, terms)?)
}

/// `(1/Γ(a)) ∫₀¹ t^{a-1} h_t(x) dt`, integrated in `u = log t`.
fn small_time_part(p: &SymbolOperator, a: f64, x: f64) -> Result<f64> {
    let rg = rgamma(a);
    if rg == 0.0 {
        return Ok(0.0);
    }
    // Below u_min the off-diagonal decay exp(-b (x^δ/t)^{1/(δ-1)}) has
    // exponent b·e^8, so the integrand is far below double precision.
    let top = p.top_degree() as f64;
    let u_min = (top * libm::log(x) - 8.0 * (top - 1.0)).min(0.0);
    if u_min >= 0.0 {
        return Ok(0.0);
    }
    Ok(rg * mellin_in_log_time(p, a, x, u_min, 0.0)?)
}

fn mellin_in_log_time(p: &SymbolOperator, a: f64, x: f64, u0: f64, u1: f64) -> Result<f64> {
    let failure = Cell::new(None);
    let f = |u: f64| {
        let t = libm::exp(u);
        match heat_kernel(p, t, &[x]) {
            Ok(h) => libm::exp(a * u) * h,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let edges = panel_edges(u0, u1, 2.0, 10_000);
    let v = adaptive_panels(&f, &edges, Tolerance::new(1e-11, 1e-11))?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(v)
}

/// `(1/π) ∫₀^∞ g(ξ) (cos xξ − T(xξ)) dξ` with `g = upper_tail_weight(a, p)`.
fn large_time_part(p: &SymbolOperator, a: f64, x: f64, terms: usize) -> Result<f64> {
    let cut = p.axis_cutoff(0, 1.0, 60.0);
    let f = |xi: f64| upper_tail_weight(a, p.eval1(xi)) * cos_remainder(x * xi, terms);
    let width = (PI / x).min(cut / 8.0);
    let edges = panel_edges(0.0, cut, width, 200_000);
    Ok(adaptive_panels(&f, &edges, Tolerance::new(1e-15, 1e-12))? / PI)
}

fn restored_polynomial(p: &SymbolOperator, a: f64, x: f64, terms: usize) -> Result<f64> {
    let mut sum = 0.0;
    for m in 0..terms {
        let j = tail_weight_moment(p, a, (2 * m + 1) as f64)? / (PI * factorial(2 * m));
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * j * libm::pow(x, (2 * m) as f64);
    }
    Ok(sum)
}

pub const MELLIN_SPLIT: f64 = 1e4;

/// `(1/Γ(a)) ∫₀^∞ t^{a-1} h_t(x) dt` for `0 < α < Q∞`, integrated in time up
/// to `T` with the remaining piece taken on the frequency side.
pub fn riesz_direct_mellin(p: &SymbolOperator, alpha: f64, x: f64) -> Result<f64> {
    p.require_1d()?;
    if !(alpha > 0.0 && alpha < p.q_inf()) {
        return Err(Error::UnsupportedRange(format!("the direct Mellin integral needs 0 < alpha < Q_inf")));
    }
    let x = x.abs();
    let a = alpha / p.delta() as f64;
    let top = p.top_degree() as f64;
    let u_min = (top * libm::log(x) - 20.0).min(libm::log(MELLIN_SPLIT) - 1.0);
    let near = rgamma(a) * mellin_in_log_time(p, a, x, u_min, libm::log(MELLIN_SPLIT))?;
    let cut = p.axis_cutoff(0, MELLIN_SPLIT, 60.0);
    let f = |xi: f64| {
        let pv = p.eval1(xi);
        libm::pow(pv, -a) * regularized_upper_gamma(a, MELLIN_SPLIT * pv) * libm::cos(x * xi)
    };
    let width = (PI / x).min(cut / 8.0);
    let far = adaptive_panels(&f, &panel_edges(0.0, cut, width, 200_000), Tolerance::new(1e-15, 1e-12))? / PI;
    Ok(near + far)
}

/// Multiplier `W_a(λ)` of `𝓛^{-a}` assembled from the split Mellin
/// representation with `k1` heat-Taylor subtractions; equals `λ^{-a}`
/// and stays finite through the poles of `Γ(a)`.
pub fn split_multiplier(a: f64, lambda: f64) -> Result<f64> {
    let k1 = if a < 0.0 { libm::floor(-a) as usize + 1 } else { 0 };
    let rg = rgamma(a);
    let mut explicit = 0.0;
    for j in 0..k1 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        explicit += sign * libm::pow(lambda, j as f64) / factorial(j) * pochhammer(a, j) * rgamma(a + j as f64 + 1.0);
    }
    let tail = upper_tail_weight(a, lambda);
    if rg == 0.0 {
        return Ok(explicit + tail);
    }
    let rem = |z: f64| {
        let mut s = libm::exp(-z);
        let mut t = 1.0;
        for j in 0..k1 {
            s -= t;
            t *= -z / (j + 1) as f64;
        }
        s
    };
    let tau = if lambda > 1.0 { 1.0 / lambda } else { 1.0 };
    let mut series = 0.0;
    let mut j = k1;
    loop {
        let term = libm::pow(-lambda * tau, j as f64) / factorial(j) * libm::pow(tau, a) / (a + j as f64);
        series += term;
        if j > k1 + 4 && term.abs() < 1e-18 * series.abs().max(1e-300) || j > k1 + 200 {
            break;
        }
        j += 1;
    }
    let mid = if tau < 1.0 {
        adaptive(&|u: f64| libm::exp(a * u) * rem(lambda * libm::exp(u)), libm::log(tau), 0.0, Tolerance::new(1e-300, 1e-13))?
    } else {
        0.0
    };
    Ok(rg * (series + mid) + explicit + tail)
}

/// The test function `(1 − x²)^k` on `[−1, 1]`.
#[derive(Clone, Debug)]
pub struct BumpFunction {
    k: u32,
    /// Coefficients of `(1 − x²)^k` in powers of `x`.
    coeffs: Vec<f64>,
}

impl BumpFunction {
    pub fn new(k: u32) -> Self {
        let mut coeffs = alloc::vec![0.0; 2 * k as usize + 1];
        let mut c = 1.0;
        for j in 0..=k as usize {
            coeffs[2 * j] = if j % 2 == 0 { c } else { -c };
            c = c * (k as usize - j) as f64 / (j + 1) as f64;
        }
        BumpFunction { k, coeffs }
    }

    fn derivative_at_one(&self, order: usize) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(order)
            .map(|(n, c)| c * (0..order).map(|i| (n - i) as f64).product::<f64>())
            .sum()
    }

    /// `φ̂(ξ) = ∫ φ(x) e^{-ixξ} dx`.
    pub fn fourier(&self, xi: f64) -> f64 {
        let k = self.k as usize;
        if xi.abs() < 4.0 * k as f64 + 8.0 {
            let rule = GaussLegendre::new(64);
            let f = |x: f64| libm::pow(1.0 - x * x, self.k as f64) * libm::cos(x * xi);
            return 2.0 * rule.composite(&f, &panel_edges(0.0, 1.0, 0.25, 4));
        }
        // Repeated integration by parts; the boundary terms at 0 vanish by parity.
        let mut s = 0.0;
        for j in k..=2 * k {
            let trig = match j % 4 {
                0 => libm::sin(xi),
                1 => libm::cos(xi),
                2 => -libm::sin(xi),
                _ => -libm::cos(xi),
            };
            s += self.derivative_at_one(j) * trig / libm::pow(xi, (j + 1) as f64);
        }
        2.0 * s
    }

    /// `(∂⁴ − ∂²)φ` at the origin, i.e. `p(D)φ(0)` for `p = ξ⁴ + ξ²`.
    pub fn quartic_plus_laplacian_at_origin(&self) -> f64 {
        let k = self.k as f64;
        12.0 * k * (k - 1.0) + 2.0 * k
    }
}

pub const PAIRING_CUTOFF: f64 = 2000.0;

/// `⟨I_α, φ⟩ = (1/2π) ∫ W_{α/δ}(p(ξ)) φ̂(ξ) dξ`.
pub fn riesz_pairing(p: &SymbolOperator, alpha: f64, phi: &BumpFunction) -> Result<f64> {
    p.require_1d()?;
    check_alpha(p, alpha)?;
    let a = alpha / p.delta() as f64;
    let failure = Cell::new(None);
    let f = |xi: f64| match split_multiplier(a, p.eval1(xi)) {
        Ok(w) => w * phi.fourier(xi),
        Err(e) => {
            failure.set(Some(e));
            0.0
        }
    };
    let edges = panel_edges(0.0, PAIRING_CUTOFF, PI, 10_000);
    let v = adaptive_panels(&f, &edges, Tolerance::new(1e-8, 1e-11))?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(v / PI)
}

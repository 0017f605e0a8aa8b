//! Small-`x` expansion of the Riesz potential of a two-term symbol
//! `a₀ξ^E + a₁ξ^e`: singular terms from the large-frequency binomial series
//! and even polynomial terms from the Mellin moments of `p^{-a}`.

use super::quad::{adaptive, adaptive_panels, panel_edges, Tolerance};
use super::riesz::{check_alpha, cos_remainder};
use super::special::{binomial, factorial, riesz_constant};
use super::symbol::{Binomial, SymbolOperator};
use super::trace::log_grid;
use crate::error::{Error, Result};
use crate::geometry::linear_fit;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct LocalExpansion {
    symbol: SymbolOperator,
    shape: Binomial,
    a: f64,
}

impl LocalExpansion {
    pub fn new(p: &SymbolOperator, alpha: f64) -> Result<Self> {
        let shape = p.as_binomial()?;
        check_alpha(p, alpha)?;
        if !(alpha > 0.0 && alpha < p.q_inf()) {
            return Err(Error::UnsupportedRange(format!("the local expansion is computed for 0 < alpha < Q_inf")));
        }
        Ok(LocalExpansion { symbol: p.clone(), shape, a: alpha / p.delta() as f64 })
    }

    /// Coefficient `e_k = C(−a, k) a₀^{-a} u^k` of `ξ^{-β_k}` at large `ξ`.
    pub fn weight(&self, k: usize) -> f64 {
        binomial(-self.a, k) * libm::pow(self.shape.top_coeff, -self.a) * libm::pow(self.shape.ratio(), k as f64)
    }

    /// `β_k = E a + k g`.
    pub fn exponent(&self, k: usize) -> f64 {
        self.shape.top as f64 * self.a + (k as f64) * self.shape.gap() as f64
    }

    /// `e_k c(β_k) x^{β_k − 1}`.
    pub fn singular_term(&self, k: usize, x: f64) -> f64 {
        let b = self.exponent(k);
        self.weight(k) * riesz_constant(b) * libm::pow(x, b - 1.0)
    }

    /// Number of polynomial terms `x^{2m}` below the first omitted singular term.
    pub fn polynomial_terms(&self, n: usize) -> usize {
        let limit = self.exponent(n) - 1.0;
        (0..).take_while(|&m| ((2 * m) as f64) < limit).count()
    }

    fn lower(&self, xi: f64) -> f64 {
        libm::pow(self.symbol.eval1(xi), -self.a)
    }

    /// Where the binomial series converges geometrically with ratio ≤ 1/2.
    fn series_start(&self) -> f64 {
        libm::pow(2.0 * self.shape.ratio().abs(), 1.0 / self.shape.gap() as f64).max(1.0)
    }

    /// `p^{-a} − Σ_{k<n} e_k ξ^{-β_k}`, summed from the tail where possible.
    pub fn remainder(&self, n: usize, xi: f64) -> f64 {
        if xi >= self.series_start() {
            let mut s = 0.0;
            for k in n..n + 200 {
                let term = self.weight(k) * libm::pow(xi, -self.exponent(k));
                s += term;
                if term.abs() <= 1e-18 * s.abs() {
                    break;
                }
            }
            return s;
        }
        self.lower(xi) - (0..n).map(|k| self.weight(k) * libm::pow(xi, -self.exponent(k))).sum::<f64>()
    }

    /// Mellin moment `M(s) = ∫₀^∞ ξ^{s−1} p(ξ)^{-a} dξ`, continued in `s`.
    pub fn moment(&self, s: f64) -> Result<f64> {
        let e_low = self.shape.low as f64 * self.a;
        if s <= e_low {
            return Err(Error::UnsupportedRange(format!("moment {s} diverges at zero frequency")));
        }
        let n = (0..).find(|&k| self.exponent(k) > s).unwrap_or(0);
        if (0..n).any(|k| (self.exponent(k) - s).abs() < 1e-9) {
            return Err(Error::UnsupportedRange(format!("moment {s} sits on a pole")));
        }
        let tol = Tolerance::new(1e-300, 1e-13);
        let head = adaptive(&|xi: f64| libm::pow(xi, s - 1.0) * self.lower(xi), 0.0, 1.0, tol)?;
        let l = self.series_start().max(50.0);
        let mid_edges: Vec<f64> = log_grid(1.0, l, 12);
        let mid = adaptive_panels(&|xi: f64| libm::pow(xi, s - 1.0) * self.remainder(n, xi), &mid_edges, tol)?;
        let mut tail = 0.0;
        for k in n..n + 200 {
            let b = self.exponent(k);
            let term = self.weight(k) * libm::pow(l, s - b) / (b - s);
            tail += term;
            if term.abs() <= 1e-18 * tail.abs() {
                break;
            }
        }
        let continued: f64 = (0..n).map(|k| self.weight(k) / (self.exponent(k) - s)).sum();
        Ok(head + mid + tail + continued)
    }

    /// Coefficient of `x^{2m}` in the expansion.
    pub fn polynomial_coefficient(&self, m: usize) -> Result<f64> {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * self.moment((2 * m + 1) as f64)? / (PI * factorial(2 * m)))
    }

    /// Partial expansion through `n` singular terms and the polynomial
    /// terms that precede the next one.
    pub fn partial_sum(&self, n: usize, x: f64) -> Result<f64> {
        let mut s: f64 = (0..n).map(|k| self.singular_term(k, x)).sum();
        for m in 0..self.polynomial_terms(n) {
            s += self.polynomial_coefficient(m)? * libm::pow(x, (2 * m) as f64);
        }
        Ok(s)
    }

    /// `I_α(x) − partial_sum(n, x)`, computed directly as a frequency
    /// integral so that no large terms cancel.
    pub fn remainder_at(&self, n: usize, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::InvalidArgument(format!("x must be positive")));
        }
        let m_terms = self.polynomial_terms(n);
        let tol = Tolerance::new(1e-300, 1e-11);
        let near = adaptive(&|xi: f64| self.lower(xi) * cos_remainder(x * xi, m_terms), 0.0, 1.0, tol)?;
        let l = (40.0 / x).max(50.0).max(self.series_start());
        let k_big = x * l;
        let mut edges = log_grid(1.0, (PI / x).min(l).max(2.0), 8);
        let more = panel_edges(*edges.last().unwrap_or(&1.0), l, PI / x, 100_000);
        edges.extend(more.into_iter().skip(1));
        edges.dedup();
        let mid = adaptive_panels(&|xi: f64| self.remainder(n, xi) * cos_remainder(x * xi, m_terms), &edges, tol)?;
        let mut tail = 0.0;
        for k in n..n + 200 {
            let b = self.exponent(k);
            let term = self.weight(k) * libm::pow(x, b - 1.0) * truncated_cosine_tail(b, k_big, m_terms);
            tail += term;
            if term.abs() <= 1e-18 * tail.abs() {
                break;
            }
        }
        let mut correction = 0.0;
        for k in 0..n {
            let b = self.exponent(k);
            let mut s = 0.0;
            for m in m_terms..m_terms + 60 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let term = sign * libm::pow(x, (2 * m) as f64) / (factorial(2 * m) * ((2 * m) as f64 + 1.0 - b));
                s += term;
                if term.abs() <= 1e-20 * s.abs() {
                    break;
                }
            }
            correction += self.weight(k) * s;
        }
        Ok((near + mid + tail - correction) / PI)
    }
}

/// `∫_K^∞ z^{-β} (cos z − Σ_{m<M} (−1)^m z^{2m}/(2m)!) dz` for large `K`.
pub fn truncated_cosine_tail(beta: f64, k: f64, m_terms: usize) -> f64 {
    let mut power = 0.0;
    for m in 0..m_terms {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let e = (2 * m) as f64 - beta + 1.0;
        power -= sign / factorial(2 * m) * libm::pow(k, e) / (-e);
    }
    power + oscillatory_tail(beta, k)
}

/// `Re ∫_K^∞ z^{-β} e^{iz} dz` from the asymptotic series of repeated
/// integration by parts, truncated at its smallest term.
pub fn oscillatory_tail(beta: f64, k: f64) -> f64 {
    // F = i e^{iK} K^{-β} Σ_j (−i)^j (β)_j K^{-j}
    let (mut re, mut im) = (0.0, 0.0);
    let (mut tr, mut ti) = (1.0, 0.0);
    let mut last = f64::INFINITY;
    for j in 0..200 {
        let size = libm::hypot(tr, ti);
        if size > last {
            break;
        }
        re += tr;
        im += ti;
        last = size;
        if size < 1e-20 {
            break;
        }
        let f = (beta + j as f64) / k;
        let (nr, ni) = (ti * f, -tr * f);
        tr = nr;
        ti = ni;
    }
    let (c, s) = (libm::cos(k), libm::sin(k));
    let scale = libm::pow(k, -beta);
    // Real part of i (c + i s)(re + i im).
    -(c * im + s * re) * scale
}

/// Fitted small-`x` exponents of the remainders after one and after two
/// singular terms, with the values they should take.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderGain {
    pub exponents: Vec<f64>,
    pub expected: Vec<f64>,
    pub gain: f64,
    pub expected_gain: f64,
}

pub fn expansion_order_gain(p: &SymbolOperator, alpha: f64, orders: &[usize], lo: f64, hi: f64) -> Result<OrderGain> {
    let exp = LocalExpansion::new(p, alpha)?;
    let xs = log_grid(lo, hi, 6);
    let lx: Vec<f64> = xs.iter().map(|x| libm::log(*x)).collect();
    let mut exponents = Vec::new();
    let mut expected = Vec::new();
    for &n in orders {
        let mut ly = Vec::with_capacity(xs.len());
        for &x in &xs {
            ly.push(libm::log(exp.remainder_at(n, x)?.abs()));
        }
        exponents.push(linear_fit(&lx, &ly)?.0);
        let next_singular = exp.exponent(n) - 1.0;
        let next_poly = (2 * exp.polynomial_terms(n)) as f64;
        expected.push(next_singular.min(next_poly));
    }
    let gain = if exponents.len() >= 2 { exponents[1] - exponents[0] } else { 0.0 };
    let expected_gain = if orders.len() >= 2 {
        (orders[1] as f64 - orders[0] as f64) * exp.shape.gap() as f64
    } else {
        0.0
    };
    Ok(OrderGain { exponents, expected, gain, expected_gain })
}

/// Leading term of the global (`x → ∞`) behaviour: the Riesz kernel of the
/// lowest-weight part, `a∞^{-a} c(e a) x^{e a − 1}`.
pub fn global_leading_term(p: &SymbolOperator, alpha: f64, x: f64) -> Result<f64> {
    p.require_1d()?;
    let g = p.global_part();
    let (c, e) = (g.terms()[0].0, g.terms()[0].1[0] as f64);
    let a = alpha / p.delta() as f64;
    Ok(libm::pow(c, -a) * riesz_constant(e * a) * libm::pow(x.abs(), e * a - 1.0))
}

/// Leading term of the local behaviour and the constant that accompanies it
/// whenever that constant dominates the next singular term.
pub fn local_leading_terms(p: &SymbolOperator, alpha: f64, x: f64) -> Result<(f64, f64)> {
    let exp = LocalExpansion::new(p, alpha)?;
    let lead = exp.singular_term(0, x.abs());
    let constant = if exp.polynomial_terms(1) > 0 { exp.polynomial_coefficient(0)? } else { 0.0 };
    Ok((lead, constant))
}

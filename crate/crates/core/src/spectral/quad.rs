//! Adaptive Gauss–Kronrod and fixed Gauss–Legendre quadrature.

use crate::error::{Error, Result};
use alloc::format;
use alloc::vec::Vec;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Absolute and relative error targets; the looser one wins.
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }
}

/// One 15-point Kronrod estimate with the embedded 7-point Gauss difference.
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

pub const MAX_INTERVALS: usize = 4000;

/// Globally adaptive integration on `[a, b]`, splitting the interval with
/// the largest error estimate until the total meets the tolerance.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (v, e) = gk15(f, a, b);
    let mut parts: Vec<(f64, f64, f64, f64)> = alloc::vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    loop {
        if !total.is_finite() {
            return Err(Error::QuadratureFailure(format!("non-finite integrand on [{a}, {b}]")));
        }
        if err <= tol.abs.max(tol.rel * total.abs()) {
            return Ok(total);
        }
        if parts.len() >= MAX_INTERVALS {
            // Accept if the remaining error is at roundoff level.
            if err <= 1e-13 * parts.iter().map(|p| p.2.abs()).sum::<f64>() {
                return Ok(total);
            }
            return Err(Error::QuadratureFailure(format!(
                "no convergence on [{a}, {b}]: estimate {total:e}, error {err:e}"
            )));
        }
        let (idx, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (l, r, v0, e0) = parts.swap_remove(idx);
        let m = 0.5 * (l + r);
        if m <= l || m >= r {
            return Err(Error::QuadratureFailure(format!("interval underflow near {m}")));
        }
        let (v1, e1) = gk15(f, l, m);
        let (v2, e2) = gk15(f, m, r);
        total += v1 + v2 - v0;
        err += e1 + e2 - e0;
        parts.push((l, m, v1, e1));
        parts.push((m, r, v2, e2));
        if err < 0.0 {
            err = parts.iter().map(|p| p.3).sum();
        }
    }
}

/// Adaptive integration over consecutive panels `edges[i]..edges[i+1]`,
/// the absolute tolerance shared evenly between panels.
pub fn adaptive_panels<F: Fn(f64) -> f64>(f: &F, edges: &[f64], tol: Tolerance) -> Result<f64> {
    let n = edges.len().saturating_sub(1).max(1) as f64;
    let per = Tolerance::new(tol.abs / n, tol.rel);
    let mut sum = 0.0;
    for w in edges.windows(2) {
        sum += adaptive(f, w[0], w[1], per)?;
    }
    Ok(sum)
}

/// Equally spaced panel edges on `[a, b]` with width at most `width`.
pub fn panel_edges(a: f64, b: f64, width: f64, max_panels: usize) -> Vec<f64> {
    let n = if width > 0.0 {
        (libm::ceil((b - a) / width) as usize).clamp(1, max_panels)
    } else {
        1
    };
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        for i in 0..(n + 1) / 2 {
            let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(c + h * x)).sum::<f64>() * h
    }

    pub fn composite<F: Fn(f64) -> f64>(&self, f: &F, edges: &[f64]) -> f64 {
        edges.windows(2).map(|w| self.integrate(f, w[0], w[1])).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_on_polynomial_is_exact() {
        let (v, _) = gk15(&|x: f64| x * x * x * x, 0.0, 1.0);
        assert!((v - 0.2).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let v = adaptive(&|x: f64| libm::pow(x, -0.25), 0.0, 1.0, Tolerance::new(1e-12, 1e-12)).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn legendre_weights_sum_to_two() {
        for n in [1, 2, 7, 20, 64] {
            let g = GaussLegendre::new(n);
            assert!((g.integrate(&|_| 1.0, -1.0, 1.0) - 2.0).abs() < 1e-13, "{n}");
            let v = g.integrate(&|x: f64| libm::exp(x), 0.0, 1.0);
            if n >= 7 {
                assert!((v - (core::f64::consts::E - 1.0)).abs() < 1e-14);
            }
        }
    }
}

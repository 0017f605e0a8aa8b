//! Dilation behaviour of spectral multipliers across the family `p_s`.

use super::plancherel::{density_level_set, density_numeric};
use super::quad::{adaptive_panels, panel_edges, GaussLegendre, Tolerance};
use super::symbol::SymbolOperator;
use crate::error::Result;
use core::cell::Cell;
use core::f64::consts::PI;

/// Rapidly decaying multipliers `m(λ)` used as test functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestMultiplier {
    Exponential,
    Gaussian,
    ShiftedGaussian,
    WeightedGaussian,
}

impl TestMultiplier {
    pub const ALL: [TestMultiplier; 4] = [
        TestMultiplier::Exponential,
        TestMultiplier::Gaussian,
        TestMultiplier::ShiftedGaussian,
        TestMultiplier::WeightedGaussian,
    ];

    pub fn eval(self, l: f64) -> f64 {
        match self {
            TestMultiplier::Exponential => libm::exp(-l),
            TestMultiplier::Gaussian => libm::exp(-l * l),
            TestMultiplier::ShiftedGaussian => libm::exp(-(l - 1.0) * (l - 1.0)),
            TestMultiplier::WeightedGaussian => l * libm::exp(-l * l),
        }
    }

    /// A level beyond which `|m|` is below `1e-18`.
    pub fn reach(self) -> f64 {
        match self {
            TestMultiplier::Exponential => 42.0,
            TestMultiplier::ShiftedGaussian => 8.0,
            _ => 7.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TestMultiplier::Exponential => "exp(-l)",
            TestMultiplier::Gaussian => "exp(-l^2)",
            TestMultiplier::ShiftedGaussian => "exp(-(l-1)^2)",
            TestMultiplier::WeightedGaussian => "l*exp(-l^2)",
        }
    }
}

/// `𝒦(m)(x) = (1/π) ∫₀^∞ m(c·p(ξ)) cos(xξ) dξ` in one dimension.
pub fn multiplier_kernel(p: &SymbolOperator, m: TestMultiplier, c: f64, x: f64) -> Result<f64> {
    p.require_1d()?;
    let cut = p.level_radius(m.reach() / c);
    let f = |xi: f64| m.eval(c * p.eval1(xi)) * libm::cos(x * xi);
    let width = if x != 0.0 { (PI / x.abs()).min(cut / 8.0) } else { cut / 8.0 };
    Ok(adaptive_panels(&f, &panel_edges(0.0, cut, width, 100_000), Tolerance::new(1e-16, 1e-13))? / PI)
}

/// The same kernel by a fixed composite Gauss–Legendre rule.
pub fn multiplier_kernel_fixed(p: &SymbolOperator, m: TestMultiplier, c: f64, x: f64) -> Result<f64> {
    p.require_1d()?;
    let cut = p.level_radius(m.reach() / c);
    let f = |xi: f64| m.eval(c * p.eval1(xi)) * libm::cos(x * xi);
    let width = if x != 0.0 { (PI / x.abs()).min(cut / 64.0) } else { cut / 64.0 };
    Ok(GaussLegendre::new(32).composite(&f, &panel_edges(0.0, cut, width, 100_000)) / PI)
}

/// `∫ m(c λ) dβ(λ)` through the closed-form density against `dλ/λ`.
pub fn multiplier_mass(p: &SymbolOperator, m: TestMultiplier, c: f64) -> Result<f64> {
    mass_with(p, m, c, density_level_set)
}

/// `∫ m(c λ) dβ(λ)` through the differenced level-set volume.
pub fn multiplier_mass_differenced(p: &SymbolOperator, m: TestMultiplier, c: f64) -> Result<f64> {
    mass_with(p, m, c, density_numeric)
}

fn mass_with(
    p: &SymbolOperator,
    m: TestMultiplier,
    c: f64,
    density: fn(&SymbolOperator, f64) -> Result<f64>,
) -> Result<f64> {
    let failure = Cell::new(None);
    let f = |u: f64| {
        let l = libm::exp(u);
        match density(p, l) {
            Ok(d) => m.eval(c * l) * d,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let hi = libm::log(m.reach() / c) + 1.0;
    let edges = panel_edges(hi - 400.0, hi, 5.0, 1000);
    let v = adaptive_panels(&f, &edges, Tolerance::new(1e-300, 1e-13))?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(v)
}

/// Largest relative gaps, over `xs`, in `𝒦_{rs}(m)(x) = r^Q 𝒦_s(m(r^δ ·))(r^q x)`
/// and in `∫ m dβ_{rs} = r^Q ∫ m(r^δ λ) dβ_s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingDeviation {
    pub kernel: f64,
    pub measure: f64,
}

pub fn spectral_scaling_check(p: &SymbolOperator, m: TestMultiplier, s: f64, r: f64, xs: &[f64]) -> Result<ScalingDeviation> {
    p.require_1d()?;
    let q = p.weight_sum() as f64;
    let rd = libm::pow(r, p.delta() as f64);
    let rq = libm::pow(r, p.weights()[0] as f64);
    let prs = p.family_member(r * s);
    let ps = p.family_member(s);
    let mut kernel: f64 = 0.0;
    let mut scale: f64 = 0.0;
    let mut gaps = alloc::vec::Vec::new();
    for &x in xs {
        let lhs = multiplier_kernel(&prs, m, 1.0, x)?;
        let rhs = libm::pow(r, q) * multiplier_kernel_fixed(&ps, m, rd, rq * x)?;
        scale = scale.max(lhs.abs());
        gaps.push((lhs - rhs).abs());
    }
    for g in gaps {
        kernel = kernel.max(g / scale);
    }
    let lhs = multiplier_mass(&prs, m, 1.0)?;
    let rhs = libm::pow(r, q) * multiplier_mass_differenced(&ps, m, rd)?;
    Ok(ScalingDeviation { kernel, measure: (lhs - rhs).abs() / lhs.abs() })
}

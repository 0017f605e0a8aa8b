//! Dimension bookkeeping for a contraction family and Monte Carlo volume
//! growth of surrogate balls.

use crate::contraction::{ContractionFamily, Side};
use crate::error::{Error, Result};
use crate::grouplaw::homogeneous_norm;
use alloc::format;
use alloc::vec::Vec;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Homogeneous and growth dimensions of `G₀`, `G∞` and `G₁ = G̃/i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub q0: u32,
    pub q_inf: u32,
    /// `None` when the quotient carries no gradation.
    pub q1: Option<u32>,
    pub d0: u32,
    pub d_inf: u32,
    pub d1: u32,
    pub stratified0: bool,
}

impl DimensionReport {
    /// The inequalities relating the six numbers.
    pub fn inequalities_hold(&self) -> bool {
        self.q_inf >= self.q0
            && self.d1 >= self.d0.max(self.d_inf)
            && self.d1 <= self.q_inf
            && self.d0 <= self.q0
            && ((self.d0 == self.q0) == self.stratified0)
    }
}

pub fn dimension_report(family: &ContractionFamily) -> Result<DimensionReport> {
    let g0 = family.contracted(Side::Local)?;
    let g_inf = family.contracted(Side::Global)?;
    let quotient = family.ambient().quotient(family.ideal())?.algebra;
    Ok(DimensionReport {
        q0: family.homogeneous_dimension(Side::Local),
        q_inf: family.homogeneous_dimension(Side::Global),
        q1: quotient.homogeneous_dimension().ok(),
        d0: g0.growth_dimension(),
        d_inf: g_inf.growth_dimension(),
        d1: quotient.growth_dimension(),
        stratified0: g0.is_stratified()?,
    })
}

/// Output of [`n0_formula`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalExponent {
    pub n0: i64,
    pub growth_gap: i64,
}

/// `N₀ = k + d' − 1 − d`, returned with the gap `D₁ − D₀ = k − 1`.
pub fn n0_formula(k: i64, d: i64, d_prime: i64) -> Result<LocalExponent> {
    if k < 1 || d < 1 || d_prime < 1 {
        return Err(Error::InvalidArgument(format!("k, d, d' must be positive, got ({k}, {d}, {d_prime})")));
    }
    if d >= k + d_prime - 1 {
        return Err(Error::ConstraintViolated(format!("need d < k + d' - 1, got d = {d}, k + d' - 1 = {}", k + d_prime - 1)));
    }
    Ok(LocalExponent { n0: k + d_prime - 1 - d, growth_gap: k - 1 })
}

pub const MIN_SAMPLES: u64 = 1000;
pub const MAX_VOLUME_DIM: usize = 4;
pub const CHUNK: u64 = 4096;

/// The surrogate ball `{z : min(N₀(z), N∞(λ_s z)) ≤ R}` in complement coordinates.
#[derive(Clone, Debug)]
pub struct SurrogateBall {
    degrees0: Vec<u32>,
    degrees_inf: Vec<u32>,
    lambda: Vec<Vec<f64>>,
    lambda_inv: Vec<Vec<f64>>,
}

fn apply(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

impl SurrogateBall {
    pub fn new(family: &ContractionFamily, s: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidArgument(format!("s must lie in (0, inf), got {s}")));
        }
        let deg = family.degrees();
        let dim = family.complement_index(Side::Local).len();
        if dim > MAX_VOLUME_DIM {
            return Err(Error::UnsupportedRange(format!("volume experiments need dim <= {MAX_VOLUME_DIM}, got {dim}")));
        }
        Ok(SurrogateBall {
            degrees0: family.complement_index(Side::Local).iter().map(|&c| deg[c]).collect(),
            degrees_inf: family.complement_index(Side::Global).iter().map(|&c| deg[c]).collect(),
            lambda: family.lambda().eval_f64(s),
            lambda_inv: family.lambda_inverse().eval_f64(s),
        })
    }

    pub fn dim(&self) -> usize {
        self.degrees0.len()
    }

    pub fn modulus(&self, z: &[f64]) -> f64 {
        let a = homogeneous_norm(&self.degrees0, z);
        let b = homogeneous_norm(&self.degrees_inf, &apply(&self.lambda, z));
        a.min(b)
    }

    /// Lower and upper corners of a box containing the ball of radius `r`.
    pub fn bounding_box(&self, r: f64) -> (Vec<f64>, Vec<f64>) {
        let n = self.dim();
        let mut lo: Vec<f64> = self.degrees0.iter().map(|&d| -libm::pow(r, d as f64)).collect();
        let mut hi: Vec<f64> = lo.iter().map(|x| -x).collect();
        let half: Vec<f64> = self.degrees_inf.iter().map(|&d| libm::pow(r, d as f64)).collect();
        for mask in 0u32..(1 << n) {
            let corner: Vec<f64> = (0..n)
                .map(|b| if mask >> b & 1 == 1 { half[b] } else { -half[b] })
                .collect();
            let z = apply(&self.lambda_inv, &corner);
            for a in 0..n {
                lo[a] = lo[a].min(z[a]);
                hi[a] = hi[a].max(z[a]);
            }
        }
        (lo, hi)
    }

    /// Hits among the samples of one chunk; the chunk index selects the stream.
    pub fn count_chunk(&self, r: f64, seed: u64, stream: u64, samples: u64) -> u64 {
        let (lo, hi) = self.bounding_box(r);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut z = alloc::vec![0.0; self.dim()];
        let mut hits = 0;
        for _ in 0..samples {
            for a in 0..z.len() {
                let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                z[a] = lo[a] + u * (hi[a] - lo[a]);
            }
            if self.modulus(&z) <= r {
                hits += 1;
            }
        }
        hits
    }

    pub fn box_volume(&self, r: f64) -> f64 {
        let (lo, hi) = self.bounding_box(r);
        lo.iter().zip(&hi).map(|(a, b)| b - a).product()
    }
}

/// Chunk layout shared by serial and parallel runners: `(stream, size)` pairs.
pub fn chunks(radius_index: usize, samples: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut left = samples;
    let mut k = 0u64;
    while left > 0 {
        let n = left.min(CHUNK);
        out.push(((radius_index as u64) << 32 | k, n));
        left -= n;
        k += 1;
    }
    out
}

/// Least-squares slope and intercept of `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let n = x.len() as f64;
    if x.len() < 2 || x.len() != y.len() {
        return Err(Error::FitFailure(format!("need at least two paired points, got {}", x.len())));
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::FitFailure(format!("degenerate abscissae")));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Fitted log-log slope of surrogate ball volumes against radius.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeGrowth {
    pub radii: Vec<f64>,
    pub volumes: Vec<f64>,
    pub hits: Vec<u64>,
    pub exponent: f64,
}

/// Serial runner. Parallel callers can map [`SurrogateBall::count_chunk`]
/// over [`chunks`] and pass the totals to [`finish_volume_fit`].
pub fn ball_volume_experiment(
    family: &ContractionFamily,
    s: f64,
    radii: &[f64],
    samples: u64,
    seed: u64,
) -> Result<VolumeGrowth> {
    let ball = prepare_volume(family, s, radii, samples)?;
    let hits: Vec<u64> = radii
        .iter()
        .enumerate()
        .map(|(i, &r)| chunks(i, samples).into_iter().map(|(st, n)| ball.count_chunk(r, seed, st, n)).sum())
        .collect();
    finish_volume_fit(&ball, radii, samples, hits)
}

pub fn prepare_volume(family: &ContractionFamily, s: f64, radii: &[f64], samples: u64) -> Result<SurrogateBall> {
    if samples < MIN_SAMPLES {
        return Err(Error::SampleBudgetTooSmall { given: samples, min: MIN_SAMPLES });
    }
    if radii.iter().any(|&r| !(r >= 1.0 && r.is_finite())) {
        return Err(Error::InvalidArgument(format!("radii must be finite and >= 1")));
    }
    SurrogateBall::new(family, s)
}

pub fn finish_volume_fit(ball: &SurrogateBall, radii: &[f64], samples: u64, hits: Vec<u64>) -> Result<VolumeGrowth> {
    let volumes: Vec<f64> = radii
        .iter()
        .zip(&hits)
        .map(|(&r, &h)| ball.box_volume(r) * h as f64 / samples as f64)
        .collect();
    if volumes.iter().any(|&v| v <= 0.0) {
        return Err(Error::FitFailure(format!("a radius produced no hits")));
    }
    let lx: Vec<f64> = radii.iter().map(|r| libm::log(*r)).collect();
    let ly: Vec<f64> = volumes.iter().map(|v| libm::log(*v)).collect();
    let (exponent, _) = linear_fit(&lx, &ly)?;
    Ok(VolumeGrowth { radii: radii.to_vec(), volumes, hits, exponent })
}

use crate::error::{Error, Result};
use alloc::format;
use alloc::vec::Vec;

/// `p(ξ) = Σ_ℓ a_ℓ ξ^{α_ℓ}` with positive coefficients and even exponents,
/// on a Euclidean space whose coordinates carry positive integer weights.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolOperator {
    weights: Vec<u32>,
    terms: Vec<(f64, Vec<u32>)>,
    delta: u32,
}

/// A two-term one-dimensional symbol `a₀ ξ^{top} + a₁ ξ^{low}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Binomial {
    pub top_coeff: f64,
    pub top: u32,
    pub low_coeff: f64,
    pub low: u32,
}

impl Binomial {
    pub fn gap(&self) -> u32 {
        self.top - self.low
    }

    /// `a₁ / a₀`.
    pub fn ratio(&self) -> f64 {
        self.low_coeff / self.top_coeff
    }
}

impl SymbolOperator {
    pub fn new(weights: Vec<u32>, terms: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        Self::with_degree(weights, terms, None)
    }

    /// Like [`SymbolOperator::new`] with an explicit ambient degree `δ`,
    /// which must be at least the largest weighted degree.
    pub fn with_degree(weights: Vec<u32>, terms: Vec<(f64, Vec<u32>)>, delta: Option<u32>) -> Result<Self> {
        let d = weights.len();
        if d == 0 || weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidArgument(format!("weights must be positive, got {weights:?}")));
        }
        if terms.is_empty() {
            return Err(Error::InvalidArgument(format!("a symbol needs at least one term")));
        }
        for (c, e) in &terms {
            if e.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: e.len() });
            }
            if !(*c > 0.0 && c.is_finite()) {
                return Err(Error::InvalidArgument(format!("coefficients must be positive, got {c}")));
            }
            if e.iter().any(|k| k % 2 == 1) || e.iter().all(|&k| k == 0) {
                return Err(Error::InvalidArgument(format!("exponents must be even and not all zero, got {e:?}")));
            }
        }
        let top = terms.iter().map(|(_, e)| weighted(&weights, e)).max().unwrap_or(0);
        let delta = delta.unwrap_or(top);
        if delta < top {
            return Err(Error::InvalidArgument(format!("ambient degree {delta} is below the top degree {top}")));
        }
        Ok(SymbolOperator { weights, terms, delta })
    }

    /// One-dimensional `Σ c_k ξ^{e_k}` with unit weight.
    pub fn univariate(terms: &[(f64, u32)]) -> Result<Self> {
        Self::new(alloc::vec![1], terms.iter().map(|&(c, e)| (c, alloc::vec![e])).collect())
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn terms(&self) -> &[(f64, Vec<u32>)] {
        &self.terms
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn eval(&self, xi: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * xi.iter().zip(e).map(|(x, &k)| libm::pow(*x, k as f64)).product::<f64>())
            .sum()
    }

    pub fn eval1(&self, xi: f64) -> f64 {
        self.terms.iter().map(|(c, e)| c * libm::pow(xi, e[0] as f64)).sum()
    }

    /// `p'(ξ)` in one dimension.
    pub fn derivative1(&self, xi: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * e[0] as f64 * libm::pow(xi, e[0] as f64 - 1.0))
            .sum()
    }

    fn degree_of(&self, e: &[u32]) -> u32 {
        weighted(&self.weights, e)
    }

    pub fn top_degree(&self) -> u32 {
        self.terms.iter().map(|(_, e)| self.degree_of(e)).max().unwrap_or(0)
    }

    pub fn bottom_degree(&self) -> u32 {
        self.terms.iter().map(|(_, e)| self.degree_of(e)).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.top_degree() == self.bottom_degree()
    }

    /// `Q = Σ q_k`.
    pub fn weight_sum(&self) -> u32 {
        self.weights.iter().sum()
    }

    /// Homogeneous dimension of the local contraction, `Q δ / w_top`.
    pub fn q0(&self) -> f64 {
        self.weight_sum() as f64 * self.delta as f64 / self.top_degree() as f64
    }

    /// Homogeneous dimension of the global contraction, `Q δ / w_bottom`.
    pub fn q_inf(&self) -> f64 {
        self.weight_sum() as f64 * self.delta as f64 / self.bottom_degree() as f64
    }

    fn keep(&self, degree: u32) -> Self {
        SymbolOperator {
            weights: self.weights.clone(),
            terms: self.terms.iter().filter(|(_, e)| self.degree_of(e) == degree).cloned().collect(),
            delta: self.delta,
        }
    }

    /// Highest-weight part, governing `ξ → ∞`.
    pub fn local_part(&self) -> Self {
        self.keep(self.top_degree())
    }

    /// Lowest-weight part, governing `ξ → 0`.
    pub fn global_part(&self) -> Self {
        self.keep(self.bottom_degree())
    }

    /// The member `p_s` of the dilation family: each term picks up `s^{δ − w_ℓ}`.
    pub fn family_member(&self, s: f64) -> Self {
        let mut out = self.clone();
        for (c, e) in out.terms.iter_mut() {
            *c *= libm::pow(s, (self.delta - weighted(&self.weights, e)) as f64);
        }
        out
    }

    /// `ξ ↦ p(r^q ξ)`: each coefficient picks up `r^{w_ℓ}`.
    pub fn dilate_coefficients(&self, r: f64) -> Self {
        let mut out = self.clone();
        for (c, e) in out.terms.iter_mut() {
            *c *= libm::pow(r, weighted(&self.weights, e) as f64);
        }
        out
    }

    /// `ξ ↦ c·p(ξ)`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        for (a, _) in out.terms.iter_mut() {
            *a *= c;
        }
        out
    }

    /// Whether every coordinate has a pure power term, so that `p` is coercive.
    pub fn is_coercive(&self) -> bool {
        (0..self.dim()).all(|k| {
            self.terms
                .iter()
                .any(|(_, e)| e[k] > 0 && e.iter().enumerate().all(|(j, &x)| j == k || x == 0))
        })
    }

    /// Smallest `R ≥ 0` such that `t·p(R e_k) ≥ level` along coordinate `k`,
    /// which bounds the region where `e^{-tp}` exceeds `e^{-level}`.
    pub fn axis_cutoff(&self, k: usize, t: f64, level: f64) -> f64 {
        let along = |r: f64| {
            let mut xi = alloc::vec![0.0; self.dim()];
            xi[k] = r;
            t * self.eval(&xi)
        };
        let mut hi = 1.0;
        while along(hi) < level {
            hi *= 2.0;
            if hi > 1e300 {
                return hi;
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if along(mid) < level {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-14 * hi {
                break;
            }
        }
        hi
    }

    /// Positive root of `p(R) = λ` in one dimension.
    pub fn level_radius(&self, lambda: f64) -> f64 {
        self.level_radius_along(&|r| self.eval1(r), lambda)
    }

    pub(crate) fn level_radius_along(&self, f: &dyn Fn(f64) -> f64, lambda: f64) -> f64 {
        if lambda <= 0.0 {
            return 0.0;
        }
        let mut hi = 1.0;
        while f(hi) < lambda {
            hi *= 2.0;
        }
        while hi > 1e-300 && f(0.5 * hi) >= lambda {
            hi *= 0.5;
        }
        let mut lo = 0.5 * hi;
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < lambda {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-16 * hi {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// The two-term form of a one-dimensional symbol, if it has one.
    pub fn as_binomial(&self) -> Result<Binomial> {
        if self.dim() != 1 || self.terms.len() != 2 {
            return Err(Error::UnsupportedRange(format!(
                "expansion checks need a two-term one-dimensional symbol"
            )));
        }
        let (mut a, mut b) = (self.terms[0].clone(), self.terms[1].clone());
        if a.1[0] < b.1[0] {
            core::mem::swap(&mut a, &mut b);
        }
        if a.1[0] == b.1[0] {
            return Err(Error::UnsupportedRange(format!("the two terms have equal degree")));
        }
        Ok(Binomial { top_coeff: a.0, top: a.1[0], low_coeff: b.0, low: b.1[0] })
    }

    pub fn require_1d(&self) -> Result<()> {
        if self.dim() != 1 {
            return Err(Error::UnsupportedRange(format!("this computation is one-dimensional, got d = {}", self.dim())));
        }
        Ok(())
    }
}

fn weighted(weights: &[u32], e: &[u32]) -> u32 {
    weights.iter().zip(e).map(|(w, k)| w * k).sum()
}

/// A symbol with its two contractions and their dimensions.
#[derive(Clone, Debug)]
pub struct ModelTriple {
    pub full: SymbolOperator,
    pub local: SymbolOperator,
    pub global: SymbolOperator,
    pub q0: f64,
    pub q_inf: f64,
}

impl ModelTriple {
    pub fn new(p: &SymbolOperator) -> Self {
        ModelTriple {
            full: p.clone(),
            local: p.local_part(),
            global: p.global_part(),
            q0: p.q0(),
            q_inf: p.q_inf(),
        }
    }

    /// Ratios `p/p_local` at large `|ξ|` and `p/p_global` at small `|ξ|`,
    /// along the diagonal direction scaled by the weights.
    pub fn dominance_ratios(&self, big: f64, small: f64) -> (f64, f64) {
        let point = |r: f64| -> Vec<f64> { self.full.weights.iter().map(|&q| libm::pow(r, q as f64)).collect() };
        let hi = point(big);
        let lo = point(small);
        (self.full.eval(&hi) / self.local.eval(&hi), self.full.eval(&lo) / self.global.eval(&lo))
    }
}

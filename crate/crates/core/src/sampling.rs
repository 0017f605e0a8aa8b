//! Seeded generators for random graded nilpotent algebras, ideals and
//! rational test vectors.

use crate::algebra::LieAlgebra;
use crate::error::Result;
use crate::free::free_nilpotent;
use crate::scalar::{int, rat, Scalar};
use crate::subspace::Subspace;
use alloc::vec::Vec;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest ambient dimension produced by [`Sampler::graded_algebra`].
pub const MAX_DIM: usize = 6;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.next_u64() % n
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 4`.
    pub fn rational(&mut self) -> Scalar {
        rat(self.range(-5, 5), self.range(1, 4))
    }

    /// Positive `p/q` with `1 ≤ p, q ≤ 5`.
    pub fn positive_rational(&mut self) -> Scalar {
        rat(self.range(1, 5), self.range(1, 5))
    }

    pub fn vector(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.rational()).collect()
    }

    fn weights(&mut self, n: usize, max: i64) -> Vec<u32> {
        (0..n).map(|_| self.range(1, max) as u32).collect()
    }

    /// A random graded nilpotent algebra of dimension at most [`MAX_DIM`]:
    /// a free nilpotent algebra, possibly cut down by a graded ideal,
    /// plus an abelian summand.
    pub fn graded_algebra(&mut self) -> Result<LieAlgebra> {
        let core = match self.below(5) {
            0 => free_nilpotent(&self.weights(2, 2), 2)?.algebra,
            1 => free_nilpotent(&self.weights(2, 2), 3)?.algebra,
            2 => free_nilpotent(&self.weights(3, 2), 2)?.algebra,
            3 => {
                let f = free_nilpotent(&self.weights(2, 2), 3)?.algebra;
                let k = 2 + self.below(3) as usize;
                let ideal = f.ideal_generated_by(&[crate::scalar::unit_vector(f.dim(), k)])?;
                f.quotient(&ideal)?.algebra
            }
            _ => {
                let n = 1 + self.below(3) as usize;
                LieAlgebra::abelian(self.weights(n, 3))
            }
        };
        let room = MAX_DIM - core.dim();
        let extra = self.below(room as u64 + 1) as usize;
        if extra == 0 {
            return Ok(core);
        }
        core.direct_sum(&LieAlgebra::abelian(self.weights(extra, 3)))
    }

    /// Ideal generated by one or two sparse integer vectors. The result is
    /// usually not graded, and may be zero or the whole algebra.
    pub fn ideal(&mut self, alg: &LieAlgebra) -> Result<Subspace> {
        let count = 1 + self.below(2) as usize;
        let gens: Vec<Vec<Scalar>> = (0..count)
            .map(|_| {
                (0..alg.dim())
                    .map(|_| if self.below(2) == 0 { int(0) } else { int(self.range(-2, 2)) })
                    .collect()
            })
            .collect();
        alg.ideal_generated_by(&gens)
    }
}

//! Finite-dimensional nilpotent Lie algebras given by exact structure constants.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{int, Coeff, Scalar};
use crate::subspace::Subspace;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

/// Positive integer degrees, one per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gradation {
    degrees: Vec<u32>,
}

impl Gradation {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.iter().any(|&d| d == 0) {
            return Err(Error::InvalidAlgebra(String::from("degrees must be at least 1")));
        }
        Ok(Gradation { degrees })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// Sparse bracket table `[e_i, e_j] = Σ_k c_ijk e_k`, optionally graded.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    table: Vec<Vec<(usize, Scalar)>>,
    gradation: Option<Gradation>,
    labels: Vec<String>,
}

/// A bracket relation `[e_i, e_j] = v` used to build an algebra.
pub type Relation = (usize, usize, Vec<Scalar>);

fn default_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{}", i + 1)).collect()
}

fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

impl LieAlgebra {
    /// Graded algebra with the given degrees; relations not listed are zero.
    pub fn graded(degrees: Vec<u32>, relations: &[Relation]) -> Result<Self> {
        let dim = degrees.len();
        let g = Gradation::new(degrees)?;
        let a = Self::build(dim, Some(g), relations)?;
        a.validate()?;
        Ok(a)
    }

    /// Algebra without a gradation, such as a quotient by a non-graded ideal.
    pub fn ungraded(dim: usize, relations: &[Relation]) -> Result<Self> {
        let a = Self::build(dim, None, relations)?;
        a.validate()?;
        Ok(a)
    }

    pub fn abelian(degrees: Vec<u32>) -> Self {
        Self::graded(degrees, &[]).expect("abelian algebras are valid")
    }

    pub fn heisenberg() -> Self {
        Self::graded(vec![1, 1, 2], &[(0, 1, vec![int(0), int(0), int(1)])])
            .expect("Heisenberg algebra is valid")
            .with_labels(vec!["X".into(), "Y".into(), "T".into()])
    }

    fn build(dim: usize, gradation: Option<Gradation>, relations: &[Relation]) -> Result<Self> {
        let mut table = vec![Vec::new(); dim * dim];
        for (i, j, v) in relations {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::InvalidAlgebra(format!("basis index out of range in [{i},{j}]")));
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            if i == j {
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(Error::InvalidAlgebra(format!(
                        "[e{0},e{0}] must vanish by antisymmetry",
                        i + 1
                    )));
                }
                continue;
            }
            let s = sparse(v);
            let neg: Vec<(usize, Scalar)> = s.iter().map(|(k, c)| (*k, -c.clone())).collect();
            let (ij, ji) = (i * dim + j, j * dim + i);
            if (!table[ij].is_empty() && table[ij] != s) || (!table[ji].is_empty() && table[ji] != neg) {
                return Err(Error::InvalidAlgebra(format!(
                    "conflicting definitions of [e{},e{}]",
                    i + 1,
                    j + 1
                )));
            }
            table[ij] = s;
            table[ji] = neg;
        }
        Ok(LieAlgebra { dim, table, gradation, labels: default_labels(dim) })
    }

    /// Builds an algebra from a full table without checking identities.
    /// Callers must guarantee the Lie algebra identities and the grading.
    pub(crate) fn from_table_unchecked(
        dim: usize,
        table: Vec<Vec<(usize, Scalar)>>,
        gradation: Option<Gradation>,
    ) -> Self {
        LieAlgebra { dim, table, gradation, labels: default_labels(dim) }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.dim {
            self.labels = labels;
        }
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn validate(&self) -> Result<()> {
        if let Some(g) = &self.gradation {
            let d = g.degrees();
            for i in 0..self.dim {
                for j in 0..self.dim {
                    for (k, _) in &self.table[i * self.dim + j] {
                        if d[*k] != d[i] + d[j] {
                            return Err(Error::InvalidAlgebra(format!(
                                "[{},{}] has a component along {} of the wrong degree",
                                self.labels[i], self.labels[j], self.labels[*k]
                            )));
                        }
                    }
                }
            }
        }
        if let Some((i, j, k)) = self.jacobi_violation() {
            return Err(Error::InvalidAlgebra(format!(
                "Jacobi identity fails for ({}, {}, {})",
                self.labels[i], self.labels[j], self.labels[k]
            )));
        }
        Ok(())
    }

    /// First basis triple on which the Jacobi identity fails, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let degs = self.gradation.as_ref().map(|g| (g.degrees().to_vec(), g.max_degree()));
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if let Some((d, top)) = &degs {
                        if d[i] + d[j] + d[k] > *top {
                            continue;
                        }
                    }
                    let ei = crate::scalar::unit_vector(n, i);
                    let ej = crate::scalar::unit_vector(n, j);
                    let ek = crate::scalar::unit_vector(n, k);
                    let a = self.bracket_unchecked(&self.bracket_unchecked(&ei, &ej), &ek);
                    let b = self.bracket_unchecked(&self.bracket_unchecked(&ej, &ek), &ei);
                    let c = self.bracket_unchecked(&self.bracket_unchecked(&ek, &ei), &ej);
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_graded(&self) -> bool {
        self.gradation.is_some()
    }

    pub fn gradation(&self) -> Option<&Gradation> {
        self.gradation.as_ref()
    }

    pub fn degrees(&self) -> Result<&[u32]> {
        self.gradation.as_ref().map(|g| g.degrees()).ok_or(Error::NotGraded)
    }

    /// Structure constants of `[e_i, e_j]` as sparse `(k, c_ijk)` pairs.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn check_len<T>(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(())
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.bracket_generic(x, y)
    }

    /// Bracket of vectors whose coordinates live in any coefficient ring.
    pub fn bracket_generic<R: Coeff>(&self, x: &[R], y: &[R]) -> Vec<R> {
        let n = self.dim;
        let mut out = vec![R::nil(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_nil() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_nil() {
                    continue;
                }
                let entries = &self.table[i * n + j];
                if entries.is_empty() {
                    continue;
                }
                let prod = xi.times(yj);
                for (k, c) in entries {
                    out[*k].accumulate(&prod.scale(c));
                }
            }
        }
        out
    }

    /// `r·x`, scaling the coordinate of degree `d` by `r^d`.
    pub fn dilate(&self, r: &Scalar, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        if r.is_zero() {
            return Err(Error::InvalidArgument(String::from("dilation factor must be nonzero")));
        }
        let d = self.degrees()?;
        Ok(x.iter()
            .zip(d)
            .map(|(c, &dj)| c * num_traits::pow(r.clone(), dj as usize))
            .collect())
    }

    /// `[g, W]` for a subspace `W`.
    pub fn bracket_with_whole(&self, w: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for i in 0..self.dim {
            let ei = crate::scalar::unit_vector(self.dim, i);
            for v in w.basis() {
                let b = self.bracket_unchecked(&ei, v);
                if b.iter().any(|c| !c.is_zero()) {
                    vs.push(b);
                }
            }
        }
        Subspace::span(self.dim, &vs).expect("bracket preserves dimension")
    }

    /// `g_[1] = g`, `g_[k+1] = [g, g_[k]]`, excluding the final zero term.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let mut out = Vec::new();
        let mut cur = Subspace::whole(self.dim);
        while cur.dim() > 0 {
            let next = self.bracket_with_whole(&cur);
            let stalled = next.dim() == cur.dim();
            out.push(cur);
            if stalled {
                break;
            }
            cur = next;
        }
        out
    }

    /// Length of the lower central series.
    pub fn step(&self) -> usize {
        self.lower_central_series().len()
    }

    pub fn is_nilpotent(&self) -> bool {
        let lcs = self.lower_central_series();
        lcs.last().map_or(true, |last| self.bracket_with_whole(last).dim() == 0)
    }

    pub fn homogeneous_dimension(&self) -> Result<u32> {
        Ok(self.degrees()?.iter().sum())
    }

    pub fn growth_dimension(&self) -> u32 {
        self.lower_central_series().iter().map(|s| s.dim() as u32).sum()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|e| e.is_empty())
    }

    pub fn is_ideal(&self, w: &Subspace) -> bool {
        w.ambient_dim() == self.dim && self.bracket_with_whole(w).is_subspace_of(w)
    }

    /// Smallest ideal containing the given vectors.
    pub fn ideal_generated_by(&self, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        let mut cur = Subspace::span(self.dim, vectors)?;
        loop {
            let next = cur.sum(&self.bracket_with_whole(&cur));
            if next.dim() == cur.dim() {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Whether the degree-one layer generates the algebra.
    pub fn is_stratified(&self) -> Result<bool> {
        let d = self.degrees()?;
        let first: Vec<usize> = (0..self.dim).filter(|&i| d[i] == 1).collect();
        let mut gen = Subspace::coordinate(self.dim, &first);
        loop {
            let mut vs = gen.basis().clone();
            for &i in &first {
                let ei = crate::scalar::unit_vector(self.dim, i);
                for v in gen.basis() {
                    vs.push(self.bracket_unchecked(&ei, v));
                }
            }
            let next = Subspace::span(self.dim, &vs)?;
            if next.dim() == gen.dim() {
                return Ok(gen.dim() == self.dim);
            }
            gen = next;
        }
    }

    /// Quotient by an ideal. The quotient is realised on the non-pivot
    /// coordinates of the ideal, and is graded exactly when the ideal is.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let section = ideal.non_pivots();
        let m = section.len();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            section.iter().map(|&c| r[c].clone()).collect()
        };
        let mut relations = Vec::new();
        for a in 0..m {
            for b in (a + 1)..m {
                let ea = crate::scalar::unit_vector(self.dim, section[a]);
                let eb = crate::scalar::unit_vector(self.dim, section[b]);
                let v = project(&self.bracket_unchecked(&ea, &eb));
                if v.iter().any(|c| !c.is_zero()) {
                    relations.push((a, b, v));
                }
            }
        }
        let graded = match &self.gradation {
            Some(g) if ideal.is_graded(g.degrees()) => {
                Some(section.iter().map(|&c| g.degrees()[c]).collect::<Vec<u32>>())
            }
            _ => None,
        };
        let algebra = match graded {
            Some(d) => LieAlgebra::graded(d, &relations)?,
            None => LieAlgebra::ungraded(m, &relations)?,
        };
        let labels = section.iter().map(|&c| self.labels[c].clone()).collect();
        let projection: Matrix = (0..self.dim)
            .map(|j| project(&crate::scalar::unit_vector(self.dim, j)))
            .collect();
        let projection = crate::linalg::transpose(&projection, m);
        Ok(Quotient { algebra: algebra.with_labels(labels), projection, section })
    }

    /// Direct sum `self ⊕ other`, both graded or both ungraded.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra> {
        let n = self.dim + other.dim;
        let mut table = vec![Vec::new(); n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                table[i * n + j] = self.table[i * self.dim + j].clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                table[(i + self.dim) * n + j + self.dim] = other.table[i * other.dim + j]
                    .iter()
                    .map(|(k, c)| (k + self.dim, c.clone()))
                    .collect();
            }
        }
        let gradation = match (&self.gradation, &other.gradation) {
            (Some(a), Some(b)) => {
                let mut d = a.degrees().to_vec();
                d.extend_from_slice(b.degrees());
                Some(Gradation::new(d)?)
            }
            (None, None) => None,
            _ => return Err(Error::NotGraded),
        };
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}'")));
        Ok(LieAlgebra { dim: n, table, gradation, labels })
    }

    /// Same brackets with a different (validated) gradation.
    pub fn regraded(&self, degrees: Vec<u32>) -> Result<LieAlgebra> {
        let mut a = self.clone();
        a.gradation = Some(Gradation::new(degrees)?);
        a.validate()?;
        Ok(a)
    }

    /// Forgets the gradation.
    pub fn ungraded_view(&self) -> LieAlgebra {
        let mut a = self.clone();
        a.gradation = None;
        a
    }

    /// Whether two algebras have identical structure constants.
    pub fn same_brackets(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim && self.table == other.table
    }
}

/// Result of [`LieAlgebra::quotient`].
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    /// Matrix of the projection `g → g/i` in the chosen coordinates.
    pub projection: Matrix,
    /// Ambient coordinates whose unit vectors realise the quotient.
    pub section: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        crate::linalg::mat_vec(&self.projection, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_bracket_and_lcs() {
        let h = LieAlgebra::heisenberg();
        let e1 = crate::scalar::unit_vector(3, 0);
        let e2 = crate::scalar::unit_vector(3, 1);
        assert_eq!(h.bracket(&e1, &e2).unwrap(), crate::scalar::unit_vector(3, 2));
        assert_eq!(h.bracket(&e1, &e1).unwrap(), vec![int(0); 3]);
        let lcs = h.lower_central_series();
        assert_eq!(lcs.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![3, 1]);
        assert_eq!(h.growth_dimension(), 4);
        assert_eq!(h.homogeneous_dimension().unwrap(), 4);
    }

    #[test]
    fn dilation_scales_by_degree() {
        let h = LieAlgebra::heisenberg();
        let x = vec![int(1), int(1), int(1)];
        assert_eq!(h.dilate(&int(2), &x).unwrap(), vec![int(2), int(2), int(4)]);
        let back = h.dilate(&crate::scalar::rat(1, 2), &h.dilate(&int(2), &x).unwrap()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rejects_bad_structure() {
        assert!(LieAlgebra::graded(vec![1, 1, 2], &[(0, 0, vec![int(0), int(0), int(1)])]).is_err());
        assert!(LieAlgebra::graded(vec![1, 1, 1], &[(0, 1, vec![int(0), int(0), int(1)])]).is_err());
    }
}

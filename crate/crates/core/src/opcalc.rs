//! Differential operators with polynomial coefficients, and expansions of
//! operators in the monomial basis `Y^γ = Y_1^{γ_1} ∘ … ∘ Y_n^{γ_n}` of a frame.

use crate::contraction::{ContractionFamily, Side};
use crate::error::{Error, Result};
use crate::grouplaw::{left_invariant_fields, poly_det, VectorField};
use crate::poly::Poly;
use crate::scalar::{int, Scalar};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

pub type MultiIndex = Vec<u32>;

/// `Σ_α a_α(x) ∂^α` on `nvars` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyDiffOperator {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Poly>,
}

fn binomial(n: u32, k: u32) -> Scalar {
    let mut r = int(1);
    for i in 0..k {
        r = r * int((n - i) as i64) / int((i + 1) as i64);
    }
    r
}

/// All multi-indices `μ ≤ α` componentwise.
fn below(alpha: &[u32]) -> Vec<MultiIndex> {
    let mut out = vec![Vec::new()];
    for &a in alpha {
        let mut next = Vec::new();
        for prefix in &out {
            for m in 0..=a {
                let mut p = prefix.clone();
                p.push(m);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

impl PolyDiffOperator {
    pub fn zero(nvars: usize) -> Self {
        PolyDiffOperator { nvars, terms: BTreeMap::new() }
    }

    pub fn identity(nvars: usize) -> Self {
        PolyDiffOperator::multiplication(nvars, Poly::one())
    }

    pub fn multiplication(nvars: usize, p: Poly) -> Self {
        let mut op = PolyDiffOperator::zero(nvars);
        op.add_term(vec![0; nvars], p);
        op
    }

    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut a = vec![0; nvars];
        a[i] = 1;
        let mut op = PolyDiffOperator::zero(nvars);
        op.add_term(a, Poly::one());
        op
    }

    pub fn from_field(f: &VectorField) -> Self {
        let n = f.coeffs.len();
        let mut op = PolyDiffOperator::zero(n);
        for (i, a) in f.coeffs.iter().enumerate() {
            let mut al = vec![0; n];
            al[i] = 1;
            op.add_term(al, a.clone());
        }
        op
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, alpha: MultiIndex, p: Poly) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(alpha.clone()).or_default();
        *e = &*e + &p;
        if e.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &[u32]) -> Poly {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total derivative order, `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.iter().sum()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, p) in &other.terms {
            out.add_term(a.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, p) in &other.terms {
            out.add_term(a.clone(), -p);
        }
        out
    }

    /// Left multiplication by a polynomial.
    pub fn left_mul(&self, p: &Poly) -> Self {
        let mut out = PolyDiffOperator::zero(self.nvars);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), p * c);
        }
        out
    }

    /// `self ∘ other`, using the Leibniz rule.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = PolyDiffOperator::zero(self.nvars);
        for (alpha, a) in &self.terms {
            for (beta, b) in &other.terms {
                for mu in below(alpha) {
                    let db = b.derivative_multi(&mu);
                    if db.is_zero() {
                        continue;
                    }
                    let c = alpha
                        .iter()
                        .zip(&mu)
                        .fold(int(1), |acc, (&x, &m)| acc * binomial(x, m));
                    let order: MultiIndex = (0..self.nvars).map(|i| alpha[i] - mu[i] + beta[i]).collect();
                    out.add_term(order, (a * &db).scale(&c));
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        self.terms
            .iter()
            .fold(Poly::zero(), |acc, (alpha, a)| &acc + &(a * &f.derivative_multi(alpha)))
    }
}

/// Ordered product `Y_1^{γ_1} ∘ Y_2^{γ_2} ∘ …` of frame fields.
pub fn monomial_operator(fields: &[VectorField], gamma: &[u32]) -> PolyDiffOperator {
    let n = fields.first().map_or(0, |f| f.coeffs.len());
    let mut op = PolyDiffOperator::identity(n);
    for (f, &g) in fields.iter().zip(gamma) {
        let y = PolyDiffOperator::from_field(f);
        for _ in 0..g {
            op = op.compose(&y);
        }
    }
    op
}

/// Weighted order `Σ_j γ_j d_j`.
pub fn weighted_order(gamma: &[u32], degrees: &[u32]) -> u32 {
    gamma.iter().zip(degrees).map(|(g, d)| g * d).sum()
}

/// Weighted-homogeneous components of a polynomial, by increasing degree.
pub fn homogeneity_profile(p: &Poly, weights: &[u32]) -> Vec<(u32, Poly)> {
    p.homogeneous_components(weights)
}

type EtaPoly = BTreeMap<MultiIndex, Poly>;

fn eta_mul(a: &EtaPoly, b: &EtaPoly) -> EtaPoly {
    let mut out = EtaPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: MultiIndex = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e.clone()).or_default();
            *v = &*v + &(ca * cb);
            if v.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

/// Writes `op = Σ_γ c_γ(x) Y^γ` for the given frame. The frame matrix must
/// have constant nonzero determinant, which holds for left-invariant frames in
/// exponential coordinates; the coefficients are then polynomials.
pub fn expand_in_frame(
    op: &PolyDiffOperator,
    frame: &[VectorField],
) -> Result<BTreeMap<MultiIndex, Poly>> {
    let n = op.nvars();
    if frame.len() != n || frame.iter().any(|f| f.coeffs.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: frame.len() });
    }
    let b: Vec<Vec<Poly>> = frame.iter().map(|f| f.coeffs.clone()).collect();
    let det = poly_det(&b);
    if !det.is_constant() || det.is_zero() {
        return Err(Error::NonPolynomialExpansion);
    }
    let inv_det = det.constant_term().recip();
    // C = B⁻¹ through the adjugate: C_kj = (-1)^{j+k} minor_{jk} / det.
    let mut c = vec![vec![Poly::zero(); n]; n];
    for j in 0..n {
        for k in 0..n {
            let minor: Vec<Vec<Poly>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&q| q != k).map(|q| b[r][q].clone()).collect())
                .collect();
            let m = poly_det(&minor).scale(&inv_det);
            c[k][j] = if (j + k) % 2 == 0 { m } else { -&m };
        }
    }
    // ξ_k = Σ_j C_kj η_j as η-polynomials.
    let xi: Vec<EtaPoly> = (0..n)
        .map(|k| {
            let mut e = EtaPoly::new();
            for j in 0..n {
                if !c[k][j].is_zero() {
                    let mut m = vec![0; n];
                    m[j] = 1;
                    e.insert(m, c[k][j].clone());
                }
            }
            e
        })
        .collect();
    let mut powers: BTreeMap<(usize, u32), EtaPoly> = BTreeMap::new();
    let mut monomials: BTreeMap<MultiIndex, PolyDiffOperator> = BTreeMap::new();
    let mut rest = op.clone();
    let mut out: BTreeMap<MultiIndex, Poly> = BTreeMap::new();
    while let Some(r) = rest.order() {
        let mut symbol = EtaPoly::new();
        for (alpha, a) in rest.terms() {
            if alpha.iter().sum::<u32>() != r {
                continue;
            }
            let mut t: EtaPoly = EtaPoly::new();
            t.insert(vec![0; n], a.clone());
            for (k, &e) in alpha.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((k, e)).or_insert_with(|| {
                    let mut acc = EtaPoly::new();
                    acc.insert(vec![0; n], Poly::one());
                    for _ in 0..e {
                        acc = eta_mul(&acc, &xi[k]);
                    }
                    acc
                });
                t = eta_mul(&t, p);
            }
            for (g, v) in t {
                let e = symbol.entry(g.clone()).or_default();
                *e = &*e + &v;
                if e.is_zero() {
                    symbol.remove(&g);
                }
            }
        }
        let mut next = rest.clone();
        for (gamma, coef) in symbol {
            let y = monomials
                .entry(gamma.clone())
                .or_insert_with(|| monomial_operator(frame, &gamma));
            next = next.sub(&y.left_mul(&coef));
            let e = out.entry(gamma.clone()).or_default();
            *e = &*e + &coef;
            if e.is_zero() {
                out.remove(&gamma);
            }
        }
        if next.order().map_or(false, |o| o >= r) {
            return Err(Error::NonPolynomialExpansion);
        }
        rest = next;
    }
    Ok(out)
}

/// Rebuilds `Σ_γ c_γ Y^γ`.
pub fn recombine(coeffs: &BTreeMap<MultiIndex, Poly>, frame: &[VectorField]) -> PolyDiffOperator {
    let n = frame.len();
    coeffs.iter().fold(PolyDiffOperator::zero(n), |acc, (g, c)| {
        acc.add(&monomial_operator(frame, g).left_mul(c))
    })
}

/// Frames of the family member at `s = 1` and of the contraction, both on
/// the coordinates of the chosen complement, plus the ambient fields
/// `X_j = Σ_a (P e_j)_a Y_a` for every ambient basis index `j`.
#[derive(Clone, Debug)]
pub struct FramePair {
    pub side: Side,
    /// Ambient degrees of the complement coordinates.
    pub weights: Vec<u32>,
    /// Ambient degrees of all basis vectors.
    pub ambient_degrees: Vec<u32>,
    pub member_frame: Vec<VectorField>,
    pub limit_frame: Vec<VectorField>,
    pub member_fields: Vec<VectorField>,
    pub limit_fields: Vec<VectorField>,
}

impl FramePair {
    pub fn new(family: &ContractionFamily, side: Side) -> Result<Self> {
        let br = family.induced_bracket(side);
        let member = br.at(&int(1))?;
        let limit = br.limit()?;
        let member_frame = left_invariant_fields(&member)?;
        let limit_frame = left_invariant_fields(&limit)?;
        let idx = family.complement_index(side);
        let n = family.ambient().dim();
        let p1 = family.projection(side).eval(&int(1));
        let p_lim: Vec<Vec<Scalar>> = {
            let m = family.projection(side);
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let l = m.get(i, j);
                            match side {
                                Side::Local => l.at_zero(),
                                Side::Global => l.at_infinity(),
                            }
                            .expect("projections have a limit")
                        })
                        .collect()
                })
                .collect()
        };
        let lift = |p: &Vec<Vec<Scalar>>, frame: &[VectorField]| -> Vec<VectorField> {
            (0..n)
                .map(|j| {
                    let c: Vec<Scalar> = idx.iter().map(|&a| p[a][j].clone()).collect();
                    VectorField::combination(frame, &c)
                })
                .collect()
        };
        Ok(FramePair {
            side,
            weights: br.degrees.clone(),
            ambient_degrees: family.degrees().to_vec(),
            member_fields: lift(&p1, &member_frame),
            limit_fields: lift(&p_lim, &limit_frame),
            member_frame,
            limit_frame,
        })
    }

    /// Comparison polynomials `p_{γ,γ'}` with
    /// `X_1^γ = X_lim^γ + Σ_{γ'} p_{γ,γ'} Y_lim^{γ'}`.
    pub fn comparison(&self, gamma: &[u32]) -> Result<Comparison> {
        self.compare(gamma, false)
    }

    /// The reverse polynomials `p'_{γ,γ'}` with
    /// `X_lim^γ = X_1^γ + Σ_{γ'} p'_{γ,γ'} Y_1^{γ'}`.
    pub fn reverse_comparison(&self, gamma: &[u32]) -> Result<Comparison> {
        self.compare(gamma, true)
    }

    fn compare(&self, gamma: &[u32], reverse: bool) -> Result<Comparison> {
        let (source, target, frame) = if reverse {
            (&self.limit_fields, &self.member_fields, &self.member_frame)
        } else {
            (&self.member_fields, &self.limit_fields, &self.limit_frame)
        };
        let lhs = monomial_operator(source, gamma);
        let base = monomial_operator(target, gamma);
        let em = expand_in_frame(&lhs, frame)?;
        let el = expand_in_frame(&base, frame)?;
        let mut polys: BTreeMap<MultiIndex, Poly> = BTreeMap::new();
        for (g, c) in em.iter() {
            let d = c - &el.get(g).cloned().unwrap_or_default();
            if !d.is_zero() {
                polys.insert(g.clone(), d);
            }
        }
        for (g, c) in el.iter() {
            if !em.contains_key(g) {
                polys.insert(g.clone(), -c);
            }
        }
        let round_trip = recombine(&em, frame) == lhs;
        Ok(Comparison {
            side: self.side,
            gamma: gamma.to_vec(),
            gamma_order: weighted_order(gamma, &self.ambient_degrees),
            weights: self.weights.clone(),
            polys,
            round_trip,
        })
    }
}

/// Result of [`FramePair::comparison`].
#[derive(Clone, Debug)]
pub struct Comparison {
    pub side: Side,
    pub gamma: MultiIndex,
    pub gamma_order: u32,
    pub weights: Vec<u32>,
    pub polys: BTreeMap<MultiIndex, Poly>,
    pub round_trip: bool,
}

impl Comparison {
    /// Every homogeneous component of `p_{γ,γ'}` has degree `> d_γ' − d_γ`
    /// on the local side and `< d_γ' − d_γ` on the global side.
    pub fn degree_ledger_holds(&self) -> bool {
        self.violations().is_empty()
    }

    /// `(γ', component degree, bound)` for each failing component.
    pub fn violations(&self) -> Vec<(MultiIndex, u32, i64)> {
        let mut out = Vec::new();
        for (g, p) in &self.polys {
            let bound = weighted_order(g, &self.weights) as i64 - self.gamma_order as i64;
            for (deg, _) in homogeneity_profile(p, &self.weights) {
                let ok = match self.side {
                    Side::Local => deg as i64 > bound,
                    Side::Global => (deg as i64) < bound,
                };
                if !ok {
                    out.push((g.clone(), deg, bound));
                }
            }
        }
        out
    }

    /// After rescaling, each term carries `s^{D + d_γ − d_γ'}`; this is
    /// positive locally (it vanishes as `s → 0`) and negative globally.
    pub fn scaled_terms_vanish_at_limit(&self) -> bool {
        self.polys.iter().all(|(g, p)| {
            let shift = self.gamma_order as i64 - weighted_order(g, &self.weights) as i64;
            homogeneity_profile(p, &self.weights).iter().all(|(deg, _)| {
                let e = *deg as i64 + shift;
                match self.side {
                    Side::Local => e > 0,
                    Side::Global => e < 0,
                }
            })
        })
    }

    /// `p_{γ,γ}` vanishes at the origin.
    pub fn diagonal_vanishes_at_origin(&self) -> bool {
        let n = self.weights.len();
        let mut diag = vec![0u32; n];
        // The diagonal term only exists when γ is supported on the complement.
        if self.gamma.len() != n {
            return true;
        }
        diag.copy_from_slice(&self.gamma);
        self.polys.get(&diag).map_or(true, |p| p.constant_term().is_zero())
    }
}

/// All multi-indices of length `n` with total order `1..=max_order`.
pub fn multi_indices(n: usize, max_order: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(n, left - k, prefix, out);
            prefix.pop();
        }
    }
    rec(n, max_order, &mut Vec::new(), &mut out);
    out.retain(|g| g.iter().sum::<u32>() >= 1);
    out.sort_by_key(|g| (g.iter().sum::<u32>(), core::cmp::Reverse(g.clone())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieAlgebra;
    use crate::grouplaw::left_invariant_fields;

    #[test]
    fn leibniz_rule() {
        let d1 = PolyDiffOperator::partial(2, 0);
        let x1 = PolyDiffOperator::multiplication(2, Poly::var(0));
        let lhs = d1.compose(&x1);
        let rhs = x1.compose(&d1).add(&PolyDiffOperator::identity(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn heisenberg_commutator_is_third_field() {
        let h = LieAlgebra::heisenberg();
        let f = left_invariant_fields(&h).unwrap();
        let a = monomial_operator(&f, &[1, 1, 0]);
        let b = PolyDiffOperator::from_field(&f[1]).compose(&PolyDiffOperator::from_field(&f[0]));
        assert_eq!(a.sub(&b), PolyDiffOperator::from_field(&f[2]));
    }

    #[test]
    fn expansion_round_trip() {
        let h = LieAlgebra::heisenberg();
        let f = left_invariant_fields(&h).unwrap();
        let op = PolyDiffOperator::partial(3, 0).compose(&PolyDiffOperator::partial(3, 1));
        let c = expand_in_frame(&op, &f).unwrap();
        assert_eq!(recombine(&c, &f), op);
    }
}

//! Group law in exponential coordinates and left-invariant vector fields.

use crate::algebra::LieAlgebra;
use crate::contraction::{ContractionFamily, Side};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{int, rat, Coeff, Scalar};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::Zero;

pub const MAX_STEP: usize = 6;

type Word = Vec<u8>;

fn assoc_mul(a: &BTreeMap<Word, Scalar>, b: &BTreeMap<Word, Scalar>, max_len: usize) -> BTreeMap<Word, Scalar> {
    let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            if wa.len() + wb.len() > max_len {
                continue;
            }
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            *out.entry(w).or_insert_with(Scalar::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

/// Coefficients of `log(e^x e^y)` as a combination of right-nested brackets
/// `[w_1,[w_2,[…,w_k]]]` in the two letters `x = 0`, `y = 1`.
#[derive(Clone, Debug)]
pub struct BchSeries {
    step: usize,
    terms: Vec<(Word, Scalar)>,
}

impl BchSeries {
    pub fn new(step: usize) -> Result<Self> {
        if step > MAX_STEP {
            return Err(Error::StepTooLarge { step, max: MAX_STEP });
        }
        let mut w: BTreeMap<Word, Scalar> = BTreeMap::new();
        for a in 0..=step {
            for b in 0..=(step - a) {
                if a + b == 0 {
                    continue;
                }
                let mut word = alloc::vec![0u8; a];
                word.extend(core::iter::repeat(1u8).take(b));
                w.insert(word, (factorial(a) * factorial(b)).recip());
            }
        }
        let mut log: BTreeMap<Word, Scalar> = BTreeMap::new();
        let mut power = w.clone();
        for m in 1..=step {
            let sign = if m % 2 == 1 { int(1) } else { int(-1) };
            let f = sign * rat(1, m as i64);
            for (word, c) in &power {
                *log.entry(word.clone()).or_insert_with(Scalar::zero) += c * &f;
            }
            power = assoc_mul(&power, &w, step);
        }
        let terms = log
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(word, c)| {
                let k = word.len() as i64;
                (word, c * rat(1, k))
            })
            .collect();
        Ok(BchSeries { step, terms })
    }

    pub fn step(&self) -> usize {
        self.step
    }

    /// Evaluates the series on `x`, `y` with brackets from `alg`.
    pub fn apply<R: Coeff>(&self, alg: &LieAlgebra, x: &[R], y: &[R]) -> Vec<R> {
        let n = alg.dim();
        let mut cache: BTreeMap<Word, Vec<R>> = BTreeMap::new();
        let mut out: Vec<R> = alloc::vec![R::nil(); n];
        for (word, c) in &self.terms {
            let v = nested(alg, word, x, y, &mut cache);
            for (o, vi) in out.iter_mut().zip(&v) {
                if !vi.is_nil() {
                    o.accumulate(&vi.scale(c));
                }
            }
        }
        out
    }
}

fn nested<R: Coeff>(
    alg: &LieAlgebra,
    word: &[u8],
    x: &[R],
    y: &[R],
    cache: &mut BTreeMap<Word, Vec<R>>,
) -> Vec<R> {
    if let Some(v) = cache.get(word) {
        return v.clone();
    }
    let letter = if word[0] == 0 { x } else { y };
    let v = if word.len() == 1 {
        letter.to_vec()
    } else {
        let inner = nested(alg, &word[1..], x, y, cache);
        if inner.iter().all(|c| c.is_nil()) {
            inner
        } else {
            alg.bracket_generic(letter, &inner)
        }
    };
    cache.insert(word.to_vec(), v.clone());
    v
}

fn series_for(alg: &LieAlgebra) -> Result<BchSeries> {
    let step = alg.step().max(1);
    BchSeries::new(step)
}

/// Product `x·y` in exponential coordinates.
pub fn bch_product(alg: &LieAlgebra, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
    for v in [x, y] {
        if v.len() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), found: v.len() });
        }
    }
    Ok(series_for(alg)?.apply(alg, x, y))
}

/// Polynomial map with one polynomial per output coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialMap {
    pub nvars: usize,
    pub components: Vec<Poly>,
}

impl PolynomialMap {
    pub fn eval(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.components.iter().map(|p| p.eval(v)).collect()
    }

    pub fn substitute(&self, subs: &[Poly]) -> Vec<Poly> {
        self.components.iter().map(|p| p.substitute(subs)).collect()
    }
}

/// The group law `m(x, y)` with variables `x_1..x_n, y_1..y_n`.
pub fn group_law_map(alg: &LieAlgebra) -> Result<PolynomialMap> {
    let n = alg.dim();
    let x: Vec<Poly> = (0..n).map(Poly::var).collect();
    let y: Vec<Poly> = (0..n).map(|i| Poly::var(n + i)).collect();
    let components = series_for(alg)?.apply(alg, &x, &y);
    Ok(PolynomialMap { nvars: 2 * n, components })
}

/// `Σ_j a_j(x) ∂_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub coeffs: Vec<Poly>,
}

impl VectorField {
    pub fn coordinate(n: usize, j: usize) -> Self {
        let mut coeffs = alloc::vec![Poly::zero(); n];
        coeffs[j] = Poly::one();
        VectorField { coeffs }
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (j, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                out = &out + &(a * &f.derivative(j));
            }
        }
        out
    }

    pub fn value_at_origin(&self) -> Vec<Scalar> {
        self.coeffs.iter().map(|a| a.constant_term()).collect()
    }

    /// `Σ_j c_j X_j` for a list of fields.
    pub fn combination(fields: &[VectorField], c: &[Scalar]) -> VectorField {
        let n = fields.first().map_or(0, |f| f.coeffs.len());
        let mut coeffs = alloc::vec![Poly::zero(); n];
        for (f, cj) in fields.iter().zip(c) {
            if cj.is_zero() {
                continue;
            }
            for (o, a) in coeffs.iter_mut().zip(&f.coeffs) {
                *o = &*o + &a.scale(cj);
            }
        }
        VectorField { coeffs }
    }
}

/// Left-invariant fields `X_j f(x) = d/dt f(m(x, t e_j))|_{t=0}`.
pub fn left_invariant_fields(alg: &LieAlgebra) -> Result<Vec<VectorField>> {
    let n = alg.dim();
    let m = group_law_map(alg)?;
    Ok((0..n)
        .map(|j| VectorField {
            coeffs: m
                .components
                .iter()
                .map(|p| p.derivative(n + j).vanish_vars(n, 2 * n))
                .collect(),
        })
        .collect())
}

/// Determinant of a square polynomial matrix by cofactor expansion.
pub fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols)
}

fn det_rec(m: &[Vec<Poly>], row: usize, cols: &[usize]) -> Poly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut out = Poly::zero();
    for (k, &c) in cols.iter().enumerate() {
        let a = &m[row][c];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, row + 1, &rest);
        let term = a * &minor;
        out = if k % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

/// Symbolic checks of the group law: identities, associativity, inverses and
/// unimodularity of both translations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLawChecks {
    pub identity: bool,
    pub associative: bool,
    pub inverse: bool,
    pub unimodular: bool,
}

impl GroupLawChecks {
    pub fn all(&self) -> bool {
        self.identity && self.associative && self.inverse && self.unimodular
    }
}

pub fn check_group_law(alg: &LieAlgebra) -> Result<GroupLawChecks> {
    let n = alg.dim();
    let m = group_law_map(alg)?;
    let xs: Vec<Poly> = (0..n).map(Poly::var).collect();
    let zero = alloc::vec![Poly::zero(); n];

    let mut subs: Vec<Poly> = xs.clone();
    subs.extend(zero.iter().cloned());
    let right_unit = m.substitute(&subs) == xs;
    let mut subs: Vec<Poly> = zero.clone();
    subs.extend(xs.iter().cloned());
    let left_unit = m.substitute(&subs) == xs;

    let mxy = m.components.clone();
    let myz: Vec<Poly> = {
        let shift: Vec<Poly> = (0..2 * n).map(|k| Poly::var(k + n)).collect();
        m.substitute(&shift)
    };
    let mut s1 = mxy.clone();
    s1.extend((0..n).map(|i| Poly::var(2 * n + i)));
    let mut s2: Vec<Poly> = xs.clone();
    s2.extend(myz);
    let associative = m.substitute(&s1) == m.substitute(&s2);

    let mut s3 = xs.clone();
    s3.extend(xs.iter().map(|p| -p));
    let inverse = m.substitute(&s3).iter().all(|p| p.is_zero());

    let jac_x: Vec<Vec<Poly>> = m
        .components
        .iter()
        .map(|p| (0..n).map(|j| p.derivative(j)).collect())
        .collect();
    let jac_y: Vec<Vec<Poly>> = m
        .components
        .iter()
        .map(|p| (0..n).map(|j| p.derivative(n + j)).collect())
        .collect();
    let unimodular = poly_det(&jac_x) == Poly::one() && poly_det(&jac_y) == Poly::one();
    Ok(GroupLawChecks { identity: right_unit && left_unit, associative, inverse, unimodular })
}

/// Coefficient of `∂_k` in `X_j` is homogeneous of degree `d_k − d_j`.
pub fn frame_is_homogeneous(alg: &LieAlgebra, fields: &[VectorField]) -> Result<bool> {
    let d = alg.degrees()?;
    Ok(fields.iter().enumerate().all(|(j, f)| {
        f.coeffs.iter().enumerate().all(|(k, a)| {
            let target = d[k] as i64 - d[j] as i64;
            a.homogeneous_components(d).iter().all(|(deg, _)| *deg as i64 == target)
        })
    }))
}

/// `N(z) = max_k ‖pr_k z‖_∞^{1/k}`.
pub fn homogeneous_norm(degrees: &[u32], z: &[f64]) -> f64 {
    z.iter()
        .zip(degrees)
        .map(|(x, &d)| libm::pow(libm::fabs(*x), 1.0 / d as f64))
        .fold(0.0, f64::max)
}

/// The computable modulus `min(N(P₀,ₛ x), N(P∞,ₛ x))` on a family member.
#[derive(Clone, Debug)]
pub struct SurrogateModulus {
    degrees: Vec<u32>,
    p0: Vec<Vec<f64>>,
    p_inf: Vec<Vec<f64>>,
}

impl SurrogateModulus {
    pub fn new(family: &ContractionFamily, s: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidArgument(alloc::string::String::from("s must lie in (0, ∞)")));
        }
        Ok(SurrogateModulus {
            degrees: family.degrees().to_vec(),
            p0: family.projection(Side::Local).eval_f64(s),
            p_inf: family.projection(Side::Global).eval_f64(s),
        })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let apply = |m: &Vec<Vec<f64>>| -> Vec<f64> {
            m.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
        };
        let a = homogeneous_norm(&self.degrees, &apply(&self.p0));
        let b = homogeneous_norm(&self.degrees, &apply(&self.p_inf));
        a.min(b)
    }
}

pub fn surrogate_modulus(family: &ContractionFamily, s: f64, x: &[f64]) -> Result<f64> {
    if x.len() != family.ambient().dim() {
        return Err(Error::DimensionMismatch { expected: family.ambient().dim(), found: x.len() });
    }
    Ok(SurrogateModulus::new(family, s)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn heisenberg_product() {
        let h = LieAlgebra::heisenberg();
        let p = bch_product(&h, &[int(1), int(0), int(0)], &[int(0), int(1), int(0)]).unwrap();
        assert_eq!(p, vec![int(1), int(1), rat(1, 2)]);
        let m = group_law_map(&h).unwrap();
        let expected = &(&(&Poly::var(2) + &Poly::var(5))
            + &(&Poly::var(0) * &Poly::var(4)).scale(&rat(1, 2)))
            - &(&Poly::var(1) * &Poly::var(3)).scale(&rat(1, 2));
        assert_eq!(m.components[2], expected);
    }

    #[test]
    fn series_matches_low_order_terms() {
        let b = BchSeries::new(3).unwrap();
        let coeff = |w: &[u8]| b.terms.iter().find(|(x, _)| x == w).map(|(_, c)| c.clone());
        // Both words of length two contribute half of [x,y] after nesting.
        assert_eq!(coeff(&[0, 1]), Some(rat(1, 4)));
        assert_eq!(coeff(&[1, 0]), Some(rat(-1, 4)));
    }

    #[test]
    fn group_law_identities_on_heisenberg() {
        let c = check_group_law(&LieAlgebra::heisenberg()).unwrap();
        assert!(c.all());
    }
}

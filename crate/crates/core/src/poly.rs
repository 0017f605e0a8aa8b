//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Exponent vectors are stored without trailing zeros, so a polynomial does not
//! need to know how many variables its ambient ring has.

use crate::scalar::{format_scalar, int, Coeff, Scalar};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;
use core::ops::{Add, Mul, Neg, Sub};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let n = a.len().max(b.len());
    let m = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(m)
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        Poly::constant(int(1))
    }

    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Poly::monomial(m, int(1))
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// Linear form `Σ c_i x_{offset+i}`.
    pub fn linear(coeffs: &[Scalar], offset: usize) -> Self {
        let mut p = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0; offset + i + 1];
                m[offset + i] = 1;
                p.add_term(m, c.clone());
            }
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let m = trim(m);
        let entry = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> Scalar {
        self.terms.get(&trim(m.to_vec())).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&[])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    /// Number of variables actually used (highest index plus one).
    pub fn nvars_used(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn weighted_degree_of(m: &[u32], weights: &[u32]) -> u32 {
        m.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.get(i).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c * int(e as i64));
        }
        out
    }

    /// Partial derivative of multi-order `alpha`.
    pub fn derivative_multi(&self, alpha: &[u32]) -> Self {
        let mut out = self.clone();
        for (i, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                out = out.derivative(i);
                if out.is_zero() {
                    return out;
                }
            }
        }
        out
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(x[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (i, &e) in m.iter().enumerate() {
                    if e > 0 {
                        t *= libm::pow(x[i], e as f64);
                    }
                }
                t
            })
            .sum()
    }

    /// Replaces variable `i` by `subs[i]` for every variable used.
    pub fn substitute(&self, subs: &[Poly]) -> Poly {
        let mut cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, e))
                    .or_insert_with(|| subs[i].pow(e))
                    .clone();
                t = &t * &pw;
            }
            out = &out + &t;
        }
        out
    }

    /// Sets every variable with index in `range` to zero.
    pub fn vanish_vars(&self, from: usize, to: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(i, &e)| e > 0 && i >= from && i < to) {
                continue;
            }
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Dilation `p(r·x)` with `x_i ↦ r^{w_i} x_i`.
    pub fn dilate(&self, r: &Scalar, weights: &[u32]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let d = Poly::weighted_degree_of(m, weights);
            out.add_term(m.clone(), c * num_traits::pow(r.clone(), d as usize));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Decomposition into weighted-homogeneous components, by increasing degree.
    pub fn homogeneous_components(&self, weights: &[u32]) -> Vec<(u32, Poly)> {
        let mut by: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = Poly::weighted_degree_of(m, weights);
            by.entry(d).or_default().add_term(m.clone(), c.clone());
        }
        by.into_iter().collect()
    }

    /// Renders the polynomial using the given variable names.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = names
                        .get(i)
                        .cloned()
                        .unwrap_or_else(|| alloc::format!("x{}", i + 1));
                    if e == 1 {
                        name
                    } else {
                        alloc::format!("{name}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                s.push_str(&format_scalar(&a));
            } else {
                if !a.is_one() {
                    let _ = write!(s, "{}*", format_scalar(&a));
                }
                s.push_str(&vars.join("*"));
            }
        }
        s
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&int(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Coeff for Poly {
    fn nil() -> Self {
        Poly::zero()
    }
    fn from_scalar(s: Scalar) -> Self {
        Poly::constant(s)
    }
    fn is_nil(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &Scalar) -> Self {
        Poly::scale(self, s)
    }
    fn accumulate(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn product_and_derivative() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert_eq!(p.derivative(1), y.scale(&int(-2)));
        assert_eq!(p.eval(&[int(3), int(1)]), int(8));
    }

    #[test]
    fn substitution_composes() {
        let x = Poly::var(0);
        let p = &x.pow(2) + &Poly::constant(rat(1, 2));
        let q = p.substitute(&[&Poly::var(1) + &Poly::one()]);
        assert_eq!(q.eval(&[int(0), int(2)]), rat(19, 2));
    }

    #[test]
    fn homogeneous_split_uses_weights() {
        let p = &(&Poly::var(0) * &Poly::var(1)) + &Poly::var(2);
        let comps = p.homogeneous_components(&[1, 1, 2]);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].0, 2);
        let comps = p.homogeneous_components(&[1, 1, 1]);
        assert_eq!(comps.iter().map(|c| c.0).collect::<Vec<_>>(), vec![1, 2]);
    }
}

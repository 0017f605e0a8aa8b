//! Laurent polynomials in one parameter and matrices of them.

use crate::scalar::{format_scalar, int, powi, to_f64, Coeff, Scalar};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, Scalar>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn monomial(power: i32, c: Scalar) -> Self {
        let mut l = Laurent::zero();
        l.add_term(power, c);
        l
    }

    pub fn constant(c: Scalar) -> Self {
        Laurent::monomial(0, c)
    }

    pub fn add_term(&mut self, power: i32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(power).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&power);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Scalar)> {
        self.terms.iter().map(|(p, c)| (*p, c))
    }

    pub fn coefficient(&self, power: i32) -> Scalar {
        self.terms.get(&power).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Whether every term is `c s^power` for this single power.
    pub fn is_monomial_of_power(&self, power: i32) -> bool {
        self.terms.keys().all(|&p| p == power)
    }

    pub fn eval(&self, s: &Scalar) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, (p, c)| acc + c * powi(s, *p))
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        self.terms.iter().map(|(p, c)| to_f64(c) * libm::pow(s, *p as f64)).sum()
    }

    /// Value at `s = 0`, defined when there are no negative powers.
    pub fn at_zero(&self) -> Option<Scalar> {
        if self.min_power().map_or(false, |p| p < 0) {
            return None;
        }
        Some(self.coefficient(0))
    }

    /// Value as `s → ∞`, defined when there are no positive powers.
    pub fn at_infinity(&self) -> Option<Scalar> {
        if self.max_power().map_or(false, |p| p > 0) {
            return None;
        }
        Some(self.coefficient(0))
    }

    /// `s ↦ r s` substitution.
    pub fn rescale(&self, r: &Scalar) -> Laurent {
        let mut out = Laurent::zero();
        for (p, c) in &self.terms {
            out.add_term(*p, c * powi(r, *p));
        }
        out
    }

    pub fn format(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let a = c.abs();
            match *p {
                0 => out.push_str(&format_scalar(&a)),
                _ => {
                    if !a.is_one() {
                        out.push_str(&format_scalar(&a));
                        out.push('*');
                    }
                    out.push_str(var);
                    if *p != 1 {
                        out.push_str(&alloc::format!("^{}", p));
                    }
                }
            }
        }
        out
    }
}

impl Coeff for Laurent {
    fn nil() -> Self {
        Laurent::zero()
    }
    fn from_scalar(s: Scalar) -> Self {
        Laurent::constant(s)
    }
    fn is_nil(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, -c.clone());
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Laurent::zero();
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                out.add_term(p + q, c * d);
            }
        }
        out
    }
    fn scale(&self, s: &Scalar) -> Self {
        let mut out = Laurent::zero();
        for (p, c) in &self.terms {
            out.add_term(*p, c * s);
        }
        out
    }
}

/// Matrix with Laurent-polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Laurent>,
}

impl ParamMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ParamMatrix { rows, cols, entries: vec![Laurent::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ParamMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Laurent::constant(int(1)));
        }
        m
    }

    pub fn from_constant(a: &[Vec<Scalar>], cols: usize) -> Self {
        let mut m = ParamMatrix::zeros(a.len(), cols);
        for (i, row) in a.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                m.set(i, j, Laurent::constant(c.clone()));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Laurent) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Laurent) {
        let e = &mut self.entries[i * self.cols + j];
        *e = Coeff::plus(e, v);
    }

    pub fn mul(&self, other: &ParamMatrix) -> ParamMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ParamMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if Coeff::is_nil(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !Coeff::is_nil(b) {
                        out.add_to(i, j, &Coeff::times(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ParamMatrix) -> ParamMatrix {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| Coeff::plus(a, b))
            .collect();
        ParamMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> ParamMatrix {
        ParamMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Coeff::negated).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coeff::is_nil)
    }

    pub fn apply(&self, x: &[Laurent]) -> Vec<Laurent> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Laurent::zero();
                for (j, xj) in x.iter().enumerate() {
                    let a = self.get(i, j);
                    if !Coeff::is_nil(a) && !Coeff::is_nil(xj) {
                        acc = Coeff::plus(&acc, &Coeff::times(a, xj));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn eval(&self, s: &Scalar) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(s)).collect())
            .collect()
    }

    pub fn eval_f64(&self, s: f64) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval_f64(s)).collect())
            .collect()
    }

    /// Submatrix on the given rows and columns.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> ParamMatrix {
        let mut out = ParamMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Laurent)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, e)| (k / self.cols, k % self.cols, e))
    }
}

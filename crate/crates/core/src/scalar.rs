//! Exact rational scalars and the coefficient-ring abstraction shared by
//! plain vectors and polynomial coefficients.

use alloc::string::String;
use alloc::format;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn to_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or(f64::NAN)
}

/// Integer power with negative exponents allowed for nonzero bases.
pub fn powi(s: &Scalar, e: i32) -> Scalar {
    if e >= 0 {
        num_traits::pow(s.clone(), e as usize)
    } else {
        num_traits::pow(s.recip(), (-e) as usize)
    }
}

pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        format!("{}", s.numer())
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn is_one(s: &Scalar) -> bool {
    s.is_one()
}

pub fn abs(s: &Scalar) -> Scalar {
    s.abs()
}

/// A commutative coefficient ring over the rationals.
pub trait Coeff: Clone + PartialEq + core::fmt::Debug {
    fn nil() -> Self;
    fn from_scalar(s: Scalar) -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn negated(&self) -> Self {
        self.scale(&int(-1))
    }
    fn accumulate(&mut self, other: &Self) {
        *self = self.plus(other);
    }
}

impl Coeff for Scalar {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
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
        self * s
    }
    fn negated(&self) -> Self {
        -self
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
}

pub fn vec_is_zero<R: Coeff>(v: &[R]) -> bool {
    v.iter().all(|c| c.is_nil())
}

pub fn unit_vector(n: usize, i: usize) -> alloc::vec::Vec<Scalar> {
    let mut v = alloc::vec![int(0); n];
    v[i] = int(1);
    v
}

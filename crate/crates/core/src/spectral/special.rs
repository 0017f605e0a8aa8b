//! Real special functions used by the spectral checks.

use core::f64::consts::PI;

/// `Γ(x)`.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `1/Γ(x)`, entire; exactly zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == libm::floor(x) {
        return 0.0;
    }
    1.0 / libm::tgamma(x)
}

/// Generalized binomial coefficient `C(x, k)`.
pub fn binomial(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - i as f64) / (i + 1) as f64)
}

/// Rising factorial `(x)_n`.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (x + i as f64))
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// `x^{-a} Γ(a, x)` for `x ≥ 1` and any real `a`, by a Lentz continued fraction.
/// The factor `e^{-x}` is included.
pub fn scaled_upper_gamma(a: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    libm::exp(-x) * h
}

/// `(1/Γ(a)) ∫_1^∞ t^{a-1} e^{-tp} dt`, continued analytically in `a`.
pub fn upper_tail_weight(a: f64, p: f64) -> f64 {
    if p >= 1.0 {
        return rgamma(a) * scaled_upper_gamma(a, p);
    }
    // p^{-a} minus the regularized lower incomplete part.
    let mut sum = 0.0;
    let mut pn = 1.0;
    for n in 0..200 {
        let term = pn * pochhammer(a, n) * rgamma(a + n as f64 + 1.0) / factorial(n);
        sum += if n % 2 == 0 { term } else { -term };
        pn *= p;
        if n > 4 && term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    libm::pow(p, -a) - sum
}

/// Regularized upper incomplete gamma `Q(a, x) = Γ(a, x)/Γ(a)` for `a > 0`.
pub fn regularized_upper_gamma(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x >= 1.0 {
        return rgamma(a) * libm::pow(x, a) * scaled_upper_gamma(a, x);
    }
    1.0 - libm::pow(x, a) * lower_series(a, x)
}

/// `x^{-a} γ(a, x) / Γ(a)` by its power series.
fn lower_series(a: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut xn = 1.0;
    for n in 0..200 {
        let term = xn / (factorial(n) * (a + n as f64));
        sum += if n % 2 == 0 { term } else { -term };
        xn *= x;
        if n > 4 && term.abs() < 1e-18 {
            break;
        }
    }
    sum * rgamma(a)
}

/// Constant of the one-dimensional Riesz kernel: the inverse Fourier
/// transform of `|ξ|^{-β}` is `riesz_constant(β) |x|^{β-1}`.
pub fn riesz_constant(beta: f64) -> f64 {
    gamma((1.0 - beta) / 2.0) * rgamma(beta / 2.0) / (libm::pow(2.0, beta) * libm::sqrt(PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_gamma_zeros() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!((rgamma(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn incomplete_gamma_branches_agree() {
        for &a in &[0.125, 0.7, -0.5, -1.3] {
            let lo = upper_tail_weight(a, 0.999_999);
            let hi = upper_tail_weight(a, 1.000_001);
            assert!((lo - hi).abs() < 1e-5, "{a}: {lo} {hi}");
        }
    }

    #[test]
    fn riesz_constant_half() {
        assert!((riesz_constant(0.5) - 1.0 / libm::sqrt(2.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn binomial_weights() {
        assert_eq!(binomial(-0.5, 0), 1.0);
        assert!((binomial(-0.5, 1) + 0.5).abs() < 1e-15);
        assert!((binomial(-0.5, 2) - 0.375).abs() < 1e-15);
    }
}

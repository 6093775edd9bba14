//! Dense univariate polynomials with double coefficients.
//!
//! Coefficient index equals the power, so `coeffs[k]` multiplies `t^k`.
//! These are used for exact symbolic work at modest degrees: derivatives,
//! antiderivatives with pinned constants, and products that feed the
//! differential-operator and factor-theorem checks. High-degree basis
//! evaluation goes through three-term recurrences instead, which stay
//! stable where monomial coefficients would cancel.

use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial in one variable, stored densely by increasing power.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: f64) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// Builds a polynomial from coefficients listed by increasing power.
    /// Trailing zeros are trimmed.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Poly { coeffs }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(&c) if c == 0.0) {
            self.coeffs.pop();
        }
    }

    /// Coefficients by increasing power (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Degree of the polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// First derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// k-th derivative.
    pub fn derivative_n(&self, k: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    /// The antiderivative F with F(a) = 0.
    pub fn antiderivative_from(&self, a: f64) -> Poly {
        let mut coeffs = vec![0.0; self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = c / (k + 1) as f64;
        }
        let mut p = Poly::from_coeffs(coeffs);
        let offset = p.eval(a);
        p = &p - &Poly::constant(offset);
        p
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: f64) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&x| x * c).collect())
    }

    /// Substitutes `t -> a + b*t`, returning the composed polynomial.
    pub fn compose_affine(&self, a: f64, b: f64) -> Poly {
        let inner = Poly::from_coeffs(vec![a, b]);
        let mut result = Poly::zero();
        for &c in self.coeffs.iter().rev() {
            result = &(&result * &inner) + &Poly::constant(c);
        }
        result
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, k: usize) -> Poly {
        let mut r = Poly::constant(1.0);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Largest absolute coefficient (0 for the zero polynomial).
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_derivative() {
        // p(t) = 1 + 2t + 3t^2, p'(t) = 2 + 6t
        let p = Poly::from_coeffs(vec![1.0, 2.0, 3.0]);
        assert_eq!(p.eval(2.0), 17.0);
        assert_eq!(p.derivative().eval(2.0), 14.0);
        assert_eq!(p.derivative_n(2).eval(5.0), 6.0);
        assert!(p.derivative_n(3).is_zero());
    }

    #[test]
    fn antiderivative_pins_the_constant() {
        let p = Poly::from_coeffs(vec![0.0, 2.0]);
        let f = p.antiderivative_from(-1.0);
        assert_eq!(f.eval(-1.0), 0.0);
        assert_eq!(f.eval(2.0), 3.0);
    }

    #[test]
    fn affine_composition() {
        // p(t) = t^2, p(1 - 2t) = 1 - 4t + 4t^2
        let p = Poly::monomial(2);
        let q = p.compose_affine(1.0, -2.0);
        assert_eq!(q.coeffs(), &[1.0, -4.0, 4.0]);
    }

    #[test]
    fn product_and_power() {
        let one_minus_t = Poly::from_coeffs(vec![1.0, -1.0]);
        let sq = one_minus_t.powi(2);
        assert_eq!(sq.coeffs(), &[1.0, -2.0, 1.0]);
        let p = &sq * &Poly::monomial(1);
        assert_eq!(p.coeffs(), &[0.0, 1.0, -2.0, 1.0]);
    }
}

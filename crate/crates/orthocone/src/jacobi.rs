//! Classical Jacobi polynomials and their normalizations.
//!
//! The family `P_n^{(a,b)}` is orthogonal on `[-1, 1]` with respect to the
//! weight `(1-t)^a (1+t)^b`. Everything here is evaluated by the standard
//! three-term recurrence, which is stable on the interval; the
//! hypergeometric series that defines the family is reserved for test
//! oracles at small degree.
//!
//! Two companions of `P_n` appear throughout the crate:
//!
//! - the rescaled family `Phat_n = A_n P_n` with
//!   `A_n = 2^n / (n+a+b+1)_n`, chosen so that differentiation lowers all
//!   three indices at once: `d/dt Phat_n^{(a,b)} = Phat_{n-1}^{(a+1,b+1)}`;
//! - the extension `P_n^{(a,-s)}` to a negative integer second parameter,
//!   defined for `n >= s` by factoring out `(1+t)^s`.
//!
//! Norm conventions: `h_n` is the norm square under the probability-
//! normalized inner product `c_{a,b} 2^{-a-b-1} \int f g w dt` (so
//! `h_0 = 1`), while `h_hat_n` is the norm square of `Phat_n` under the
//! unnormalized integral `\int f g w dt`.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::special::{gamma_ratio, pochhammer};

/// Largest polynomial degree the crate accepts. Beyond this the
/// double-precision residual guarantees in the tests no longer hold.
pub const MAX_DEGREE: usize = 64;

/// Exponent pair of the weight `(1-t)^alpha (1+t)^beta` on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    /// Validates `alpha > -1` and `beta > -1`.
    ///
    /// ```
    /// use orthocone::jacobi::JacobiParams;
    /// assert!(JacobiParams::new(0.3, 1.7).is_ok());
    /// assert!(JacobiParams::new(-1.0, 0.0).is_err());
    /// ```
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_exponent("alpha", alpha)?;
        check_exponent("beta", beta)?;
        Ok(JacobiParams { alpha, beta })
    }
}

/// Normalization constants attached to degree `n` of a Jacobi family.
#[derive(Debug, Clone, Copy)]
pub struct JacobiConstants {
    /// `c_{a,b} = Gamma(a+b+2) / (Gamma(a+1) Gamma(b+1))`, the constant
    /// that makes the weight integrate to `2^{a+b+1} / c_{a,b}`.
    pub c_ab: f64,
    /// Norm square of `P_n` under the probability-normalized inner product.
    pub h_n: f64,
    /// Rescaling factor `A_n = 2^n / (n+a+b+1)_n`.
    pub a_n: f64,
    /// Norm square of `Phat_n = A_n P_n` under the raw integral:
    /// `h_hat_n = 2^{a+b+1} c_{a,b}^{-1} A_n^2 h_n`.
    pub h_hat_n: f64,
}

fn check_exponent(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFiniteParameter { name });
    }
    if value <= -1.0 {
        return Err(Error::ParameterOutOfRange {
            name,
            value,
            bound: -1.0,
        });
    }
    Ok(())
}

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge { n, max: MAX_DEGREE });
    }
    Ok(())
}

/// Evaluates `P_n^{(alpha,beta)}(t)` by the three-term recurrence.
///
/// ```
/// use orthocone::jacobi::{jacobi_eval, JacobiParams};
/// let p = JacobiParams::new(0.0, 0.0).unwrap();
/// // Legendre P_2(t) = (3t^2 - 1)/2
/// let v = jacobi_eval(p, 2, 0.0).unwrap();
/// assert!((v + 0.5).abs() < 1e-15);
/// ```
pub fn jacobi_eval(p: JacobiParams, n: usize, t: f64) -> Result<f64> {
    Ok(*jacobi_eval_many(p, n, t)?.last().expect("nonempty"))
}

/// Evaluates all of `P_0, ..., P_nmax` at `t` in one recurrence sweep.
pub fn jacobi_eval_many(p: JacobiParams, n_max: usize, t: f64) -> Result<Vec<f64>> {
    check_degree(n_max)?;
    let (a, b) = (p.alpha, p.beta);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return Ok(out);
    }
    out.push(0.5 * ((a + b + 2.0) * t + (a - b)));
    for k in 2..=n_max {
        let n = k as f64;
        let c1 = 2.0 * n * (n + a + b) * (2.0 * n + a + b - 2.0);
        let c2 = (2.0 * n + a + b - 1.0) * (a * a - b * b);
        let c3 = (2.0 * n + a + b - 2.0) * (2.0 * n + a + b - 1.0) * (2.0 * n + a + b);
        let c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * (2.0 * n + a + b);
        let next = ((c2 + c3 * t) * out[k - 1] - c4 * out[k - 2]) / c1;
        out.push(next);
    }
    Ok(out)
}

/// Normalization constants for degree `n`: the weight constant `c_{a,b}`,
/// the norm square `h_n`, the rescaling factor `A_n`, and the rescaled
/// norm square `h_hat_n`.
pub fn jacobi_constants(p: JacobiParams, n: usize) -> Result<JacobiConstants> {
    check_degree(n)?;
    let (a, b) = (p.alpha, p.beta);
    let c_ab = gamma_ratio(a + b + 2.0, a + 1.0, b + 1.0);
    let h_n = pochhammer(a + 1.0, n) * pochhammer(b + 1.0, n) * (a + b + n as f64 + 1.0)
        / (pochhammer(1.0, n) * pochhammer(a + b + 2.0, n) * (a + b + 2.0 * n as f64 + 1.0));
    let a_n = a_factor(p, n);
    let h_hat_n = 2f64.powf(a + b + 1.0) / c_ab * a_n * a_n * h_n;
    Ok(JacobiConstants {
        c_ab,
        h_n,
        a_n,
        h_hat_n,
    })
}

/// The rescaling factor `A_n = 2^n / (n+a+b+1)_n`. It depends on the
/// parameters only through the sum `a + b`.
pub fn a_factor(p: JacobiParams, n: usize) -> f64 {
    2f64.powi(n as i32) / pochhammer(n as f64 + p.alpha + p.beta + 1.0, n)
}

/// Evaluates the rescaled polynomial `Phat_n = A_n P_n` at `t`.
///
/// The rescaled family has leading coefficient `1/n!`, so its iterated
/// derivatives step down through the parameter ladder without picking up
/// constants: `d/dt Phat_n^{(a,b)} = Phat_{n-1}^{(a+1,b+1)}`.
pub fn jacobi_hat_eval(p: JacobiParams, n: usize, t: f64) -> Result<f64> {
    Ok(a_factor(p, n) * jacobi_eval(p, n, t)?)
}

/// Evaluates the `k`-th derivative of `P_n^{(alpha,beta)}` at `t` via the
/// parameter ladder `d^k/dt^k P_n = ((n+a+b+1)_k / 2^k) P_{n-k}^{(a+k,b+k)}`.
/// Returns 0 when `k > n`.
pub fn jacobi_derivative(p: JacobiParams, n: usize, k: usize, t: f64) -> Result<f64> {
    check_degree(n)?;
    if k > n {
        return Ok(0.0);
    }
    let scale = pochhammer(n as f64 + p.alpha + p.beta + 1.0, k) / 2f64.powi(k as i32);
    let shifted = JacobiParams::new(p.alpha + k as f64, p.beta + k as f64)?;
    Ok(scale * jacobi_eval(shifted, n - k, t)?)
}

/// Evaluates the `k`-th derivative of `Phat_n^{(alpha,beta)}` at `t`,
/// which equals `Phat_{n-k}^{(alpha+k,beta+k)}(t)` for `k <= n` and 0 above.
pub fn jacobi_hat_derivative(p: JacobiParams, n: usize, k: usize, t: f64) -> Result<f64> {
    check_degree(n)?;
    if k > n {
        return Ok(0.0);
    }
    let shifted = JacobiParams::new(p.alpha + k as f64, p.beta + k as f64)?;
    jacobi_hat_eval(shifted, n - k, t)
}

/// Evaluates the negative-second-parameter polynomial `P_n^{(alpha,-s)}`
/// for integer `s >= 1` and `n >= s`:
///
/// ```text
/// P_n^{(a,-s)}(t) = [(-a-n)_s / (2^s (-n)_s)] (1+t)^s P_{n-s}^{(a,s)}(t).
/// ```
///
/// Degrees `n < s` are refused; that range belongs to the modified family
/// in [`crate::jacobi_sobolev`].
pub fn jacobi_negparam_eval(alpha: f64, s: usize, n: usize, t: f64) -> Result<f64> {
    check_exponent("alpha", alpha)?;
    check_degree(n)?;
    if s == 0 {
        return Err(Error::InvalidSmoothness {
            s,
            reason: "the negative parameter -s requires s >= 1",
        });
    }
    if n < s {
        return Err(Error::DegreeTooSmall { n, min: s });
    }
    let num = pochhammer(-alpha - n as f64, s);
    let den = 2f64.powi(s as i32) * pochhammer(-(n as f64), s);
    let shifted = JacobiParams::new(alpha, s as f64)?;
    Ok(num / den * (1.0 + t).powi(s as i32) * jacobi_eval(shifted, n - s, t)?)
}

/// Monomial coefficients of `P_n^{(alpha,beta)}`, by running the
/// three-term recurrence on coefficient vectors. Intended for the
/// low-degree symbolic manipulations in the differential-operator and
/// Sobolev modules; pointwise evaluation should use [`jacobi_eval`].
pub fn jacobi_poly(p: JacobiParams, n: usize) -> Result<Poly> {
    check_degree(n)?;
    let (a, b) = (p.alpha, p.beta);
    let mut prev = Poly::constant(1.0);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = Poly::from_coeffs(vec![0.5 * (a - b), 0.5 * (a + b + 2.0)]);
    for k in 2..=n {
        let m = k as f64;
        let c1 = 2.0 * m * (m + a + b) * (2.0 * m + a + b - 2.0);
        let c2 = (2.0 * m + a + b - 1.0) * (a * a - b * b);
        let c3 = (2.0 * m + a + b - 2.0) * (2.0 * m + a + b - 1.0) * (2.0 * m + a + b);
        let c4 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * (2.0 * m + a + b);
        let lin = Poly::from_coeffs(vec![c2 / c1, c3 / c1]);
        let next = &(&lin * &cur) - &prev.scale(c4 / c1);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Monomial coefficients of the rescaled polynomial `Phat_n = A_n P_n`.
/// The leading coefficient is `1/n!`, which keeps the coefficient vector
/// well scaled for the antidifferentiation used by the modified family.
pub fn jacobi_hat_poly(p: JacobiParams, n: usize) -> Result<Poly> {
    Ok(jacobi_poly(p, n)?.scale(a_factor(p, n)))
}

/// The endpoint value `P_n^{(alpha,beta)}(1) = (alpha+1)_n / n!`.
pub fn jacobi_at_one(p: JacobiParams, n: usize) -> f64 {
    pochhammer(p.alpha + 1.0, n) / pochhammer(1.0, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_bad_parameters() {
        assert!(JacobiParams::new(-1.5, 0.0).is_err());
        assert!(JacobiParams::new(0.0, f64::NAN).is_err());
        assert!(jacobi_eval(
            JacobiParams {
                alpha: 0.0,
                beta: 0.0
            },
            65,
            0.3
        )
        .is_err());
    }

    #[test]
    fn degree_zero_is_one() {
        let p = JacobiParams::new(0.3, 1.7).unwrap();
        assert_eq!(jacobi_eval(p, 0, 0.4).unwrap(), 1.0);
    }

    #[test]
    fn legendre_values() {
        let p = JacobiParams::new(0.0, 0.0).unwrap();
        assert_abs_diff_eq!(jacobi_eval(p, 2, 0.0).unwrap(), -0.5, epsilon = 1e-15);
        // P_3(t) = (5t^3 - 3t)/2 at t = 0.4
        let expect = (5.0 * 0.4f64.powi(3) - 3.0 * 0.4) / 2.0;
        assert_abs_diff_eq!(jacobi_eval(p, 3, 0.4).unwrap(), expect, epsilon = 1e-15);
    }

    #[test]
    fn endpoint_matches_pochhammer() {
        for &(a, b) in &[(0.0, 0.0), (1.3, -0.4), (2.5, 0.7)] {
            let p = JacobiParams::new(a, b).unwrap();
            for n in 0..=12 {
                let lhs = jacobi_eval(p, n, 1.0).unwrap();
                let rhs = jacobi_at_one(p, n);
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12 * rhs.abs().max(1.0));
            }
        }
    }

    #[test]
    fn poly_form_matches_recurrence_eval() {
        let p = JacobiParams::new(0.7, -0.2).unwrap();
        for n in 0..=10 {
            let poly = jacobi_poly(p, n).unwrap();
            for i in 0..=20 {
                let t = -1.0 + 0.1 * i as f64;
                let direct = jacobi_eval(p, n, t).unwrap();
                assert_abs_diff_eq!(poly.eval(t), direct, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn hat_poly_leading_coefficient_is_inverse_factorial() {
        let p = JacobiParams::new(1.5, 0.5).unwrap();
        for n in 1..=10 {
            let poly = jacobi_hat_poly(p, n).unwrap();
            let lead = poly.coeffs()[n];
            let expect = 1.0 / crate::special::factorial(n);
            assert_abs_diff_eq!(lead, expect, epsilon = 1e-12 * expect);
        }
    }

    #[test]
    fn derivative_ladder_matches_poly_derivative() {
        let p = JacobiParams::new(0.4, 1.1).unwrap();
        for n in 0..=8 {
            let poly = jacobi_poly(p, n).unwrap();
            for k in 0..=3 {
                let dpoly = poly.derivative_n(k);
                for &t in &[-0.9, -0.3, 0.2, 0.8] {
                    let ladder = jacobi_derivative(p, n, k, t).unwrap();
                    assert_abs_diff_eq!(ladder, dpoly.eval(t), epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn negparam_vanishes_at_minus_one() {
        assert_abs_diff_eq!(
            jacobi_negparam_eval(0.0, 1, 1, -1.0).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert!(jacobi_negparam_eval(0.0, 2, 1, 0.3).is_err());
    }

    #[test]
    fn constants_h0_is_one() {
        for &(a, b) in &[(0.0, 0.0), (1.0, 0.5), (-0.5, 2.0)] {
            let p = JacobiParams::new(a, b).unwrap();
            let c = jacobi_constants(p, 0).unwrap();
            assert_abs_diff_eq!(c.h_n, 1.0, epsilon = 1e-13);
            assert_abs_diff_eq!(c.a_n, 1.0, epsilon = 1e-15);
        }
        let c00 = jacobi_constants(JacobiParams::new(0.0, 0.0).unwrap(), 0).unwrap();
        assert_abs_diff_eq!(c00.c_ab, 1.0, epsilon = 1e-14);
    }
}

//! The modified Jacobi family `J_n` and the one-variable Sobolev inner
//! product it is orthogonal under.
//!
//! For a smoothness order `s >= 1` the inner product on `[-1, 1]` is
//!
//! ```text
//! [f, g] = \int_{-1}^{1} f^(s) g^(s) (1-t)^a (1+t)^b dt
//!          + sum_{k=0}^{s-1} mu_k f^(k)(-1) g^(k)(-1),
//! ```
//!
//! with fixed masses `mu_k > 0` attached to derivative values at the left
//! endpoint. The orthogonal basis splits into two ranges:
//!
//! - `n <= s-1`: `J_n(t) = (t+1)^n / n!`, supported entirely by the
//!   boundary terms;
//! - `n >= s`: the unique degree-`n` polynomial whose s-th derivative is
//!   the rescaled Jacobi polynomial `Phat_{n-s}^{(a,b)}` and whose
//!   derivatives of order `0..s` all vanish at `t = -1`.
//!
//! The second range is built by exact antidifferentiation of the
//! coefficient vector of `Phat_{n-s}`, so derivative and endpoint
//! identities hold to machine precision. When the first parameter is
//! shifted and the second is the negative integer `-s` (the case the cone
//! reduces to), the family also has a closed product form, exposed as
//! [`j_closed_form_eval`].

use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiParams};
use crate::poly::Poly;
use crate::quadrature::gauss_jacobi_sym;
use crate::special::factorial;

/// Parameter set for the one-variable Sobolev inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct SobolevParams1D {
    pub alpha: f64,
    pub beta: f64,
    /// Number of derivatives in the integral term.
    pub s: usize,
    /// Boundary masses `mu_0..mu_{s-1}`, one per derivative order below `s`.
    pub mu: Vec<f64>,
}

impl SobolevParams1D {
    pub fn new(alpha: f64, beta: f64, s: usize, mu: Vec<f64>) -> Result<Self> {
        JacobiParams::new(alpha, beta)?;
        if s == 0 {
            return Err(Error::InvalidSmoothness {
                s,
                reason: "the Sobolev inner product needs s >= 1",
            });
        }
        if mu.len() != s {
            return Err(Error::MassCountMismatch {
                expected: s,
                got: mu.len(),
            });
        }
        if mu.iter().any(|&m| !m.is_finite() || m < 0.0) {
            return Err(Error::NonFiniteParameter { name: "mu" });
        }
        Ok(SobolevParams1D { alpha, beta, s, mu })
    }

    /// Unit masses `mu_k = 1`.
    pub fn with_unit_masses(alpha: f64, beta: f64, s: usize) -> Result<Self> {
        Self::new(alpha, beta, s, vec![1.0; s.max(1)])
    }
}

/// Monomial coefficients of `J_n` for the parameter pair `(alpha, beta)`
/// and smoothness `s`.
///
/// For `n <= s-1` this is `(t+1)^n / n!`; for `n >= s` it is the s-fold
/// antiderivative of `Phat_{n-s}^{(alpha,beta)}` with every integration
/// constant pinned to 0 at `t = -1`.
pub fn j_poly(alpha: f64, beta: f64, s: usize, n: usize) -> Result<Poly> {
    let p = JacobiParams::new(alpha, beta)?;
    if s == 0 {
        return Err(Error::InvalidSmoothness {
            s,
            reason: "the modified family needs s >= 1",
        });
    }
    if n < s {
        let base = Poly::from_coeffs(vec![1.0, 1.0]);
        return Ok(base.powi(n).scale(1.0 / factorial(n)));
    }
    let mut poly = jacobi::jacobi_hat_poly(p, n - s)?;
    for _ in 0..s {
        poly = poly.antiderivative_from(-1.0);
    }
    Ok(poly)
}

/// Evaluates `J_n` at `t`.
///
/// ```
/// use orthocone::jacobi_sobolev::j_eval;
/// // Below the smoothness order, J_1(t) = (t+1)/1!
/// let v = j_eval(0.3, 0.8, 2, 1, 0.5).unwrap();
/// assert!((v - 1.5).abs() < 1e-15);
/// ```
pub fn j_eval(alpha: f64, beta: f64, s: usize, n: usize, t: f64) -> Result<f64> {
    Ok(j_poly(alpha, beta, s, n)?.eval(t))
}

/// Evaluates the `k`-th derivative of `J_n` at `t` through the ladder
/// `d/dt J_n[s] = J_{n-1}[s-1]`, whose `s = 0` floor is `Phat_n`.
pub fn j_derivative(alpha: f64, beta: f64, s: usize, n: usize, k: usize, t: f64) -> Result<f64> {
    if k > n {
        return Ok(0.0);
    }
    if k >= s {
        // All s antiderivative layers are differentiated away; what is
        // left follows the plain Phat ladder.
        let p = JacobiParams::new(alpha, beta)?;
        if n < s {
            // J_n = (t+1)^n / n! in this range.
            return Ok((1.0 + t).powi((n - k) as i32) / factorial(n - k));
        }
        return jacobi::jacobi_hat_derivative(p, n - s, k - s, t);
    }
    j_eval(alpha, beta, s - k, n - k, t)
}

/// Closed product form of the family with parameters `(alpha, -s)`:
///
/// ```text
/// J_n^{(alpha,-s)}(t) = [(n-s)!/n!] (1+t)^s Phat_{n-s}^{(alpha,s)}(t),
/// ```
///
/// valid for `n >= s`. This equals the antidifferentiation construction
/// with first parameter shifted by `s` and second parameter 0, i.e.
/// `j_eval(alpha + s, 0.0, s, n, t)`, but is evaluated by the stable
/// three-term recurrence and so is safe at high degree.
pub fn j_closed_form_eval(alpha: f64, s: usize, n: usize, t: f64) -> Result<f64> {
    if s == 0 {
        return Err(Error::InvalidSmoothness {
            s,
            reason: "the closed form needs s >= 1",
        });
    }
    if n < s {
        return Err(Error::DegreeTooSmall { n, min: s });
    }
    let p = JacobiParams::new(alpha, s as f64)?;
    let ratio = factorial(n - s) / factorial(n);
    Ok(ratio * (1.0 + t).powi(s as i32) * jacobi::jacobi_hat_eval(p, n - s, t)?)
}

/// Evaluates the Sobolev inner product of `f` and `g`, both supplied as
/// derivative oracles: `f(k, t)` must return the `k`-th derivative of `f`
/// at `t`. The integral term uses a Gauss-Jacobi rule exact through the
/// declared degree.
pub fn sobolev_ip_1d(
    f: &dyn Fn(usize, f64) -> f64,
    g: &dyn Fn(usize, f64) -> f64,
    p: &SobolevParams1D,
    exactness: usize,
) -> Result<f64> {
    let npts = exactness / 2 + 1;
    let rule = gauss_jacobi_sym(p.alpha, p.beta, npts)?;
    let s = p.s;
    let mut total = rule.integrate(|t| f(s, t) * g(s, t));
    for (k, &mu_k) in p.mu.iter().enumerate() {
        total += mu_k * f(k, -1.0) * g(k, -1.0);
    }
    Ok(total)
}

/// [`sobolev_ip_1d`] specialized to polynomials in coefficient form.
pub fn sobolev_ip_1d_poly(f: &Poly, g: &Poly, p: &SobolevParams1D) -> Result<f64> {
    let exactness = f.degree().max(p.s) + g.degree().max(p.s);
    let fd = |k: usize, t: f64| f.derivative_n(k).eval(t);
    let gd = |k: usize, t: f64| g.derivative_n(k).eval(t);
    sobolev_ip_1d(&fd, &gd, p, exactness)
}

/// The Sobolev norm square of `J_n` under [`sobolev_ip_1d`]: `mu_n` for
/// `n <= s-1`, and the rescaled Jacobi norm `h_hat_{n-s}` above.
pub fn j_norm_square(p: &SobolevParams1D, n: usize) -> Result<f64> {
    if n < p.s {
        Ok(p.mu[n])
    } else {
        let jp = JacobiParams::new(p.alpha, p.beta)?;
        Ok(jacobi::jacobi_constants(jp, n - p.s)?.h_hat_n)
    }
}

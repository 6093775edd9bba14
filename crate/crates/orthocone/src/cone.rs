//! Orthogonal and Sobolev orthogonal bases on the conic surface.
//!
//! Points live on `V = {(x, t) : |x| = t, 0 <= t <= 1}` in `R^{d+1}`. For
//! the weight `t^beta (1-t)^gamma` the orthogonal basis of degree `n` is
//!
//! ```text
//! S_{m,l}^n(x, t) = P_{n-m}^{(2m+beta+d-1, gamma)}(1 - 2t) Y_l^m(x),
//! ```
//!
//! where `Y_l^m` is a solid spherical harmonic, `Y_l^m(x) = t^m Y_l^m(xi)`
//! on the cone. The Sobolev counterpart replaces the Jacobi factor by the
//! modified family `J_{n-m}^{(2m+beta+d-1, -s)}(1 - 2t)`, which trades the
//! no-longer-integrable weight exponent `gamma = -s` for `s` t-derivatives
//! in the inner product plus boundary terms on the rim `t = 1`.
//!
//! Throughout, the t-derivative is the partial derivative in the explicit
//! `t` slot with `x` held fixed. In the mode representation
//! `f = sum p_{m,l}(t) Y_l^m(x)` used by [`ConePolynomial`], that
//! derivative acts on the `p` factors alone, which keeps every derivative
//! identity exactly computable on coefficient vectors.

use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiParams, MAX_DEGREE};
use crate::jacobi_sobolev::{self, j_closed_form_eval};
use crate::poly::Poly;
use crate::quadrature::{cone_quadrature, gauss_jacobi_01};
use crate::special::{binomial, factorial, pochhammer};
use crate::sphere::{harmonic_dim, harmonic_eval_unchecked, sphere_quadrature, surface_area};
use std::collections::BTreeMap;

/// The weight structure on the cone: a genuine weight exponent `gamma`, or
/// the Sobolev replacement for `gamma = -s`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightMode {
    /// Weight `t^beta (1-t)^gamma` with `gamma > -1`.
    Ordinary { gamma: f64 },
    /// Sobolev form with `s` t-derivatives and rim masses
    /// `lambda_0..lambda_{s-1}`.
    Sobolev { s: usize, lambdas: Vec<f64> },
}

/// Dimension, weight exponent `beta`, and weight mode for a cone basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeParams {
    pub d: usize,
    pub beta: f64,
    pub mode: WeightMode,
}

impl ConeParams {
    /// Parameters for the ordinary weight `t^beta (1-t)^gamma`; requires
    /// `beta > -d` and `gamma > -1`.
    pub fn ordinary(d: usize, beta: f64, gamma: f64) -> Result<Self> {
        check_dim(d)?;
        check_beta(beta, -(d as f64))?;
        if !gamma.is_finite() {
            return Err(Error::NonFiniteParameter { name: "gamma" });
        }
        if gamma <= -1.0 {
            return Err(Error::ParameterOutOfRange {
                name: "gamma",
                value: gamma,
                bound: -1.0,
            });
        }
        Ok(ConeParams {
            d,
            beta,
            mode: WeightMode::Ordinary { gamma },
        })
    }

    /// Parameters for the Sobolev form with smoothness `s` and rim masses
    /// `lambdas`; requires `beta > -d - s` and positive masses.
    pub fn sobolev(d: usize, beta: f64, s: usize, lambdas: Vec<f64>) -> Result<Self> {
        check_dim(d)?;
        check_beta(beta, -(d as f64) - s as f64)?;
        if s == 0 {
            return Err(Error::InvalidSmoothness {
                s,
                reason: "the Sobolev mode needs s >= 1",
            });
        }
        if lambdas.len() != s {
            return Err(Error::MassCountMismatch {
                expected: s,
                got: lambdas.len(),
            });
        }
        if lambdas.iter().any(|&l| !l.is_finite() || l <= 0.0) {
            return Err(Error::NonFiniteParameter { name: "lambdas" });
        }
        Ok(ConeParams {
            d,
            beta,
            mode: WeightMode::Sobolev { s, lambdas },
        })
    }

    /// The Jacobi parameter pair `(2m + beta + d - 1, gamma-slot)` of the
    /// radial factor at harmonic degree `m`.
    pub fn radial_alpha(&self, m: usize) -> f64 {
        2.0 * m as f64 + self.beta + self.d as f64 - 1.0
    }

    pub(crate) fn require_ordinary(&self) -> Result<f64> {
        match &self.mode {
            WeightMode::Ordinary { gamma } => Ok(*gamma),
            WeightMode::Sobolev { .. } => Err(Error::WrongWeightKind {
                reason: "operation needs the ordinary weight, got Sobolev parameters",
            }),
        }
    }

    pub(crate) fn require_sobolev(&self) -> Result<(usize, &[f64])> {
        match &self.mode {
            WeightMode::Sobolev { s, lambdas } => Ok((*s, lambdas)),
            WeightMode::Ordinary { .. } => Err(Error::WrongWeightKind {
                reason: "operation needs Sobolev parameters, got the ordinary weight",
            }),
        }
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { d })
    }
}

fn check_beta(beta: f64, bound: f64) -> Result<()> {
    if !beta.is_finite() {
        return Err(Error::NonFiniteParameter { name: "beta" });
    }
    if beta <= bound {
        return Err(Error::ParameterOutOfRange {
            name: "beta",
            value: beta,
            bound,
        });
    }
    Ok(())
}

/// Index of one basis element: total degree `n`, harmonic degree `m <= n`,
/// and the harmonic label `1 <= ell <= dim H_m^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndex {
    pub n: usize,
    pub m: usize,
    pub ell: usize,
}

impl BasisIndex {
    pub fn new(d: usize, n: usize, m: usize, ell: usize) -> Result<Self> {
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge { n, max: MAX_DEGREE });
        }
        if m > n {
            return Err(Error::InvalidIndex {
                n,
                m,
                ell,
                reason: "harmonic degree m must not exceed the total degree n",
            });
        }
        let dim = harmonic_dim(d, m);
        if ell == 0 || ell > dim {
            return Err(Error::InvalidIndex {
                n,
                m,
                ell,
                reason: "ell must lie in 1..=dim of the harmonic space",
            });
        }
        Ok(BasisIndex { n, m, ell })
    }
}

/// A point on the cone surface, stored as the direction `xi` and height
/// `t`; the embedded point is `(t xi, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConePoint {
    pub xi: Vec<f64>,
    pub t: f64,
}

impl ConePoint {
    pub fn new(xi: Vec<f64>, t: f64) -> Result<Self> {
        let norm2: f64 = xi.iter().map(|&c| c * c).sum();
        if (norm2.sqrt() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidPoint {
                reason: "direction xi is not a unit vector",
            });
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidPoint {
                reason: "height t must lie in [0, 1]",
            });
        }
        Ok(ConePoint { xi, t })
    }

    /// Coordinates `x = t xi` of the embedded point.
    pub fn x(&self) -> Vec<f64> {
        self.xi.iter().map(|&c| self.t * c).collect()
    }
}

/// Dimension of the degree-`n` orthogonal-polynomial space on the cone:
/// `C(n+d-1, n) + C(n+d-2, n-1)`.
pub fn cone_space_dim(d: usize, n: usize) -> usize {
    let first = binomial(n + d - 1, n);
    let second = if n == 0 {
        0.0
    } else {
        binomial(n + d - 2, n - 1)
    };
    (first + second).round() as usize
}

/// All basis indices of total degree exactly `n`.
pub fn basis_indices(d: usize, n: usize) -> Vec<BasisIndex> {
    let mut out = Vec::new();
    for m in 0..=n {
        for ell in 1..=harmonic_dim(d, m) {
            out.push(BasisIndex { n, m, ell });
        }
    }
    out
}

/// Evaluates the ordinary basis element
/// `P_{n-m}^{(2m+beta+d-1, gamma)}(1-2t) t^m Y_ell^m(xi)`.
pub fn basis_eval(p: &ConeParams, idx: &BasisIndex, pt: &ConePoint) -> Result<f64> {
    let gamma = p.require_ordinary()?;
    let idx = BasisIndex::new(p.d, idx.n, idx.m, idx.ell)?;
    let jp = JacobiParams::new(p.radial_alpha(idx.m), gamma)?;
    let radial = jacobi::jacobi_eval(jp, idx.n - idx.m, 1.0 - 2.0 * pt.t)?;
    let solid = pt.t.powi(idx.m as i32) * harmonic_eval_unchecked(p.d, idx.m, idx.ell, &pt.xi);
    Ok(radial * solid)
}

/// Evaluates the Sobolev basis element
/// `J_{n-m}^{(2m+beta+d-1, -s)}(1-2t) t^m Y_ell^m(xi)` through the stable
/// product form: for `n-m >= s` the radial factor is
/// `[(n-m-s)!/(n-m)!] (2(1-t))^s Phat_{n-m-s}^{(2m+beta+d-1, s)}(1-2t)`,
/// and for `n-m <= s-1` it is `2^{n-m} (1-t)^{n-m} / (n-m)!`.
pub fn sobolev_basis_eval(p: &ConeParams, idx: &BasisIndex, pt: &ConePoint) -> Result<f64> {
    let (s, _) = p.require_sobolev()?;
    let idx = BasisIndex::new(p.d, idx.n, idx.m, idx.ell)?;
    let q = idx.n - idx.m;
    let u = 1.0 - 2.0 * pt.t;
    let radial = if q < s {
        (1.0 + u).powi(q as i32) / factorial(q)
    } else {
        j_closed_form_eval(p.radial_alpha(idx.m), s, q, u)?
    };
    let solid = pt.t.powi(idx.m as i32) * harmonic_eval_unchecked(p.d, idx.m, idx.ell, &pt.xi);
    Ok(radial * solid)
}

/// Evaluates the `k`-th t-derivative (x held fixed) of the Sobolev basis
/// element at `pt`. Each t-derivative of the radial factor pulls out `-2`
/// through the argument `1 - 2t` and lowers the modified-family indices;
/// past the `s` antiderivative layers the plain hat ladder takes over.
pub fn sobolev_basis_dt(p: &ConeParams, idx: &BasisIndex, pt: &ConePoint, k: usize) -> Result<f64> {
    let (s, _) = p.require_sobolev()?;
    let idx = BasisIndex::new(p.d, idx.n, idx.m, idx.ell)?;
    let q = idx.n - idx.m;
    let alpha = p.radial_alpha(idx.m);
    let u = 1.0 - 2.0 * pt.t;
    // The modified family with second parameter -s is the (alpha + s, 0)
    // antiderivative construction.
    let radial = jacobi_sobolev::j_derivative(alpha + s as f64, 0.0, s, q, k, u)?;
    let chain = (-2f64).powi(k as i32);
    let solid = pt.t.powi(idx.m as i32) * harmonic_eval_unchecked(p.d, idx.m, idx.ell, &pt.xi);
    Ok(chain * radial * solid)
}

/// Evaluates the `k`-th t-derivative (x held fixed) of the ordinary basis
/// element at `pt`. Differentiating the radial factor steps down the
/// parameter ladder:
///
/// ```text
/// d^k/dt^k S_{m,l}^{n,(beta,gamma)} = (-1)^k (n+m+beta+gamma+d)_k
///                                     S_{m,l}^{n-k,(beta+k,gamma+k)},
/// ```
///
/// and the derivative vanishes once `k` exceeds the radial degree `n - m`.
pub fn basis_dt(p: &ConeParams, idx: &BasisIndex, pt: &ConePoint, k: usize) -> Result<f64> {
    let gamma = p.require_ordinary()?;
    let idx = BasisIndex::new(p.d, idx.n, idx.m, idx.ell)?;
    if k == 0 {
        return basis_eval(p, &idx, pt);
    }
    if k > idx.n - idx.m {
        return Ok(0.0);
    }
    let factor = (-1f64).powi(k as i32)
        * pochhammer((idx.n + idx.m) as f64 + p.beta + gamma + p.d as f64, k);
    let shifted = ConeParams::ordinary(p.d, p.beta + k as f64, gamma + k as f64)?;
    let target = BasisIndex {
        n: idx.n - k,
        m: idx.m,
        ell: idx.ell,
    };
    Ok(factor * basis_eval(&shifted, &target, pt)?)
}

/// Norm square of a basis element under the inner product selected by the
/// parameter mode.
///
/// Ordinary weight:
/// `h_{n,m} = [(beta+d)_{2m} / (beta+gamma+d+1)_{2m}] h_{n-m}^{(2m+beta+d-1, gamma)}`.
///
/// Sobolev form: `2^{2(n-m)} lambda_{n-m}` when `n-m <= s-1`, else
/// `2^{s-beta-2m-d} h_hat_{n-m-s}^{(s+2m+beta+d-1, 0)}`.
pub fn basis_norm(p: &ConeParams, n: usize, m: usize) -> Result<f64> {
    if m > n {
        return Err(Error::InvalidIndex {
            n,
            m,
            ell: 1,
            reason: "harmonic degree m must not exceed the total degree n",
        });
    }
    let d = p.d as f64;
    match &p.mode {
        WeightMode::Ordinary { gamma } => {
            let jp = JacobiParams::new(p.radial_alpha(m), *gamma)?;
            let h = jacobi::jacobi_constants(jp, n - m)?.h_n;
            let ratio =
                pochhammer(p.beta + d, 2 * m) / pochhammer(p.beta + *gamma + d + 1.0, 2 * m);
            Ok(ratio * h)
        }
        WeightMode::Sobolev { s, lambdas } => {
            let q = n - m;
            if q < *s {
                Ok(4f64.powi(q as i32) * lambdas[q])
            } else {
                let jp = JacobiParams::new(p.radial_alpha(m) + *s as f64, 0.0)?;
                let h_hat = jacobi::jacobi_constants(jp, q - s)?.h_hat_n;
                Ok(2f64.powf(*s as f64 - p.beta - 2.0 * m as f64 - d) * h_hat)
            }
        }
    }
}

/// Computes the normalized ordinary inner product of two functions on the
/// cone by quadrature of the declared polynomial exactness.
pub fn cone_ip(
    p: &ConeParams,
    mut f: impl FnMut(&[f64], f64) -> f64,
    mut g: impl FnMut(&[f64], f64) -> f64,
    exactness: usize,
) -> Result<f64> {
    let gamma = p.require_ordinary()?;
    let rule = cone_quadrature(p.d, p.beta, gamma, exactness)?;
    Ok(rule.integrate(|x, t| f(x, t) * g(x, t)))
}

/// Computes the Sobolev inner product of two functions supplied as
/// derivative oracles: `f(k, x, t)` must return the `k`-th t-derivative
/// (x fixed) of `f` at the cone point `(x, t)`, for `0 <= k <= s`.
///
/// The volume term integrates `\partial^s f \partial^s g` against
/// `t^{beta+s} dm` with a `1/omega_d` average; each rim term integrates
/// `\partial^k f(xi, 1) \partial^k g(xi, 1)` over the sphere with mass
/// `lambda_k`, likewise averaged.
pub fn sobolev_ip_cone(
    p: &ConeParams,
    f: &dyn Fn(usize, &[f64], f64) -> f64,
    g: &dyn Fn(usize, &[f64], f64) -> f64,
    exactness: usize,
) -> Result<f64> {
    let (s, lambdas) = p.require_sobolev()?;
    let d = p.d;
    let omega = surface_area(d);
    let t_rule = gauss_jacobi_01(p.beta + s as f64 + d as f64 - 1.0, 0.0, exactness / 2 + 1)?;
    let s_rule = sphere_quadrature(d, exactness)?;

    let mut total = 0.0;
    for (&t, &wt) in t_rule.nodes.iter().zip(&t_rule.weights) {
        for (xi, &ws) in s_rule.nodes.iter().zip(&s_rule.weights) {
            let x: Vec<f64> = xi.iter().map(|&c| t * c).collect();
            total += wt * ws / omega * f(s, &x, t) * g(s, &x, t);
        }
    }
    for (k, &lambda) in lambdas.iter().enumerate() {
        let mut rim = 0.0;
        for (xi, &ws) in s_rule.nodes.iter().zip(&s_rule.weights) {
            rim += ws * f(k, xi, 1.0) * g(k, xi, 1.0);
        }
        total += lambda / omega * rim;
    }
    Ok(total)
}

/// A polynomial on the cone stored mode by mode: `f = sum p_{m,l}(t)
/// Y_l^m(x)` with solid harmonics `Y_l^m`. The map key is `(m, ell)`.
///
/// This representation makes the t-derivative (x fixed) exact: it simply
/// differentiates each `p_{m,l}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConePolynomial {
    d: usize,
    modes: BTreeMap<(usize, usize), Poly>,
}

impl ConePolynomial {
    pub fn new(d: usize) -> Self {
        ConePolynomial {
            d,
            modes: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Adds `p(t) Y_ell^m(x)` to the polynomial.
    pub fn add_mode(&mut self, m: usize, ell: usize, p: Poly) {
        if p.is_zero() {
            return;
        }
        let entry = self.modes.entry((m, ell)).or_insert_with(Poly::zero);
        *entry = &*entry + &p;
        if entry.is_zero() {
            self.modes.remove(&(m, ell));
        }
    }

    /// Iterates over `((m, ell), p)` pairs.
    pub fn modes(&self) -> impl Iterator<Item = (&(usize, usize), &Poly)> {
        self.modes.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    /// Total degree: max over modes of `m + deg p`.
    pub fn degree(&self) -> usize {
        self.modes
            .iter()
            .map(|(&(m, _), p)| m + p.degree())
            .max()
            .unwrap_or(0)
    }

    /// Evaluates at the cone point with direction `xi` and height `t`.
    pub fn eval(&self, xi: &[f64], t: f64) -> f64 {
        self.eval_split(xi, t, t)
    }

    /// Evaluates with the solid-harmonic slot and the radial slot decoupled:
    /// `sum p_{m,l}(v) t^m Y_l^m(xi)`. The on-cone value is
    /// `eval_split(xi, t, t)`; integral representations of projections use
    /// off-cone points where the two slots differ.
    pub fn eval_split(&self, xi: &[f64], t: f64, v: f64) -> f64 {
        self.modes
            .iter()
            .map(|(&(m, ell), p)| {
                let solid = if m == 0 {
                    1.0
                } else {
                    t.powi(m as i32) * harmonic_eval_unchecked(self.d, m, ell, xi)
                };
                p.eval(v) * solid
            })
            .sum()
    }

    /// The t-derivative with x held fixed: differentiates each mode's
    /// radial polynomial.
    pub fn dt(&self) -> ConePolynomial {
        let mut out = ConePolynomial::new(self.d);
        for (&(m, ell), p) in &self.modes {
            out.add_mode(m, ell, p.derivative());
        }
        out
    }

    /// The `k`-fold t-derivative.
    pub fn dt_n(&self, k: usize) -> ConePolynomial {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.dt();
        }
        out
    }

    pub fn scale(&self, c: f64) -> ConePolynomial {
        let mut out = ConePolynomial::new(self.d);
        for (&(m, ell), p) in &self.modes {
            out.add_mode(m, ell, p.scale(c));
        }
        out
    }

    pub fn add(&self, other: &ConePolynomial) -> ConePolynomial {
        let mut out = self.clone();
        for (&(m, ell), p) in &other.modes {
            out.add_mode(m, ell, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &ConePolynomial) -> ConePolynomial {
        self.add(&other.scale(-1.0))
    }

    /// Largest absolute radial coefficient across modes, used to scale
    /// residual checks.
    pub fn max_abs_coeff(&self) -> f64 {
        self.modes
            .values()
            .map(Poly::max_abs_coeff)
            .fold(0.0, f64::max)
    }

    /// Multiplies every mode by a polynomial in `t` alone.
    pub fn mul_radial(&self, q: &Poly) -> ConePolynomial {
        let mut out = ConePolynomial::new(self.d);
        for (&(m, ell), p) in &self.modes {
            out.add_mode(m, ell, p * q);
        }
        out
    }

    /// Exact coefficient form of the ordinary basis element: the radial
    /// factor `P_{n-m}^{(2m+beta+d-1, gamma)}(1-2t)` as a polynomial in
    /// `t` attached to mode `(m, ell)`.
    pub fn from_ordinary_basis(p: &ConeParams, idx: &BasisIndex) -> Result<ConePolynomial> {
        let gamma = p.require_ordinary()?;
        let idx = BasisIndex::new(p.d, idx.n, idx.m, idx.ell)?;
        let jp = JacobiParams::new(p.radial_alpha(idx.m), gamma)?;
        let radial = jacobi::jacobi_poly(jp, idx.n - idx.m)?.compose_affine(1.0, -2.0);
        let mut out = ConePolynomial::new(p.d);
        out.add_mode(idx.m, idx.ell, radial);
        Ok(out)
    }

    /// Exact coefficient form of the Sobolev basis element, via the
    /// antidifferentiation construction of the modified family.
    pub fn from_sobolev_basis(p: &ConeParams, idx: &BasisIndex) -> Result<ConePolynomial> {
        let (s, _) = p.require_sobolev()?;
        let idx = BasisIndex::new(p.d, idx.n, idx.m, idx.ell)?;
        let alpha = p.radial_alpha(idx.m);
        let radial = jacobi_sobolev::j_poly(alpha + s as f64, 0.0, s, idx.n - idx.m)?
            .compose_affine(1.0, -2.0);
        let mut out = ConePolynomial::new(p.d);
        out.add_mode(idx.m, idx.ell, radial);
        Ok(out)
    }

    /// Builds `sum c(n, m, ell) S_{m,ell}^n` over all indices with
    /// `n <= degree`, with coefficients drawn from the callback. The basis
    /// elements are taken in exact coefficient form, ordinary or Sobolev
    /// according to the parameter mode.
    pub fn from_basis_combination(
        p: &ConeParams,
        degree: usize,
        mut coeff: impl FnMut(&BasisIndex) -> f64,
    ) -> Result<ConePolynomial> {
        let mut out = ConePolynomial::new(p.d);
        for n in 0..=degree {
            for idx in basis_indices(p.d, n) {
                let c = coeff(&idx);
                if c == 0.0 {
                    continue;
                }
                let elem = match p.mode {
                    WeightMode::Ordinary { .. } => Self::from_ordinary_basis(p, &idx)?,
                    WeightMode::Sobolev { .. } => Self::from_sobolev_basis(p, &idx)?,
                };
                out = out.add(&elem.scale(c));
            }
        }
        Ok(out)
    }

    /// Derivative oracle adapter for [`sobolev_ip_cone`]: precomputes the
    /// t-derivatives up to order `k_max`.
    pub fn derivative_stack(&self, k_max: usize) -> Vec<ConePolynomial> {
        let mut stack = Vec::with_capacity(k_max + 1);
        stack.push(self.clone());
        for k in 1..=k_max {
            let next = stack[k - 1].dt();
            stack.push(next);
        }
        stack
    }
}

/// Evaluates a derivative stack as the oracle shape [`sobolev_ip_cone`]
/// expects. The point `(x, t)` has `x = t xi`; at the apex every positive
/// mode vanishes through its solid-harmonic factor.
pub fn stack_oracle(stack: &[ConePolynomial]) -> impl Fn(usize, &[f64], f64) -> f64 + '_ {
    move |k: usize, x: &[f64], t: f64| {
        let f = &stack[k];
        if t == 0.0 {
            // Only the (m = 0) mode survives at the apex.
            return f
                .modes()
                .filter(|(&(m, _), _)| m == 0)
                .map(|(_, p)| p.eval(0.0))
                .sum();
        }
        let xi: Vec<f64> = x.iter().map(|&c| c / t).collect();
        f.eval(&xi, t)
    }
}

/// Plain-value oracle adapter: evaluates a cone polynomial at the embedded
/// point `(x, t)` with `x = t xi`, the argument shape the quadrature and
/// coefficient routines use.
pub fn cone_oracle(f: &ConePolynomial) -> impl Fn(&[f64], f64) -> f64 + '_ {
    move |x: &[f64], t: f64| {
        if t == 0.0 {
            return f
                .modes()
                .filter(|(&(m, _), _)| m == 0)
                .map(|(_, p)| p.eval(0.0))
                .sum();
        }
        let xi: Vec<f64> = x.iter().map(|&c| c / t).collect();
        f.eval(&xi, t)
    }
}

/// Deterministic panel of cone points for residual checks: `n_t` heights
/// equally spaced in `[0.05, 0.95]` crossed with `n_dir` well-spread
/// directions (golden-angle points on the circle for `d = 2`, a Fibonacci
/// lattice on the sphere for `d = 3`).
pub fn sample_points(d: usize, n_t: usize, n_dir: usize) -> Result<Vec<ConePoint>> {
    check_dim(d)?;
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut dirs = Vec::with_capacity(n_dir);
    for j in 0..n_dir {
        match d {
            2 => {
                let theta = golden * j as f64;
                dirs.push(vec![theta.cos(), theta.sin()]);
            }
            _ => {
                let z = 1.0 - (2 * j + 1) as f64 / n_dir as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let theta = golden * j as f64;
                dirs.push(vec![r * theta.cos(), r * theta.sin(), z]);
            }
        }
    }
    let mut out = Vec::with_capacity(n_t * n_dir);
    for i in 0..n_t {
        let t = if n_t == 1 {
            0.5
        } else {
            let s = i as f64 / (n_t - 1) as f64;
            0.05 * (1.0 - s) + 0.95 * s
        };
        for xi in &dirs {
            out.push(ConePoint::new(xi.clone(), t)?);
        }
    }
    Ok(out)
}

/// Sobolev inner product of two cone polynomials, with the quadrature
/// exactness chosen from their degrees.
pub fn sobolev_ip_cone_poly(p: &ConeParams, f: &ConePolynomial, g: &ConePolynomial) -> Result<f64> {
    let (s, _) = p.require_sobolev()?;
    let fs = f.derivative_stack(s);
    let gs = g.derivative_stack(s);
    let exactness = f.degree() + g.degree();
    let f_oracle = stack_oracle(&fs);
    let g_oracle = stack_oracle(&gs);
    sobolev_ip_cone(p, &f_oracle, &g_oracle, exactness)
}

/// Full Gram matrix of the basis through total degree `n_max`, together
/// with the index list in row order. Entry `(i, j)` is the inner product
/// of elements `i` and `j` under the mode's inner product.
pub fn gram_matrix(p: &ConeParams, n_max: usize) -> Result<(Vec<BasisIndex>, Vec<Vec<f64>>)> {
    let indices: Vec<BasisIndex> = (0..=n_max).flat_map(|n| basis_indices(p.d, n)).collect();
    match &p.mode {
        WeightMode::Ordinary { gamma } => {
            let rule = cone_quadrature(p.d, p.beta, *gamma, 2 * n_max)?;
            // Values of every basis element at every node; the Gram matrix
            // is then one weighted product per pair.
            let mut values = vec![vec![0.0; rule.nodes.len()]; indices.len()];
            for (row, idx) in indices.iter().enumerate() {
                let jp = JacobiParams::new(p.radial_alpha(idx.m), *gamma)?;
                for (col, (x, t)) in rule.nodes.iter().enumerate() {
                    let u = 1.0 - 2.0 * t;
                    let radial = jacobi::jacobi_eval(jp, idx.n - idx.m, u)?;
                    let xi: Vec<f64> = if *t == 0.0 {
                        vec![0.0; p.d]
                    } else {
                        x.iter().map(|&c| c / t).collect()
                    };
                    let solid = if idx.m == 0 {
                        1.0
                    } else if *t == 0.0 {
                        0.0
                    } else {
                        t.powi(idx.m as i32) * harmonic_eval_unchecked(p.d, idx.m, idx.ell, &xi)
                    };
                    values[row][col] = radial * solid;
                }
            }
            let gram = weighted_gram(&values, &rule.weights);
            Ok((indices, gram))
        }
        WeightMode::Sobolev { s, lambdas } => {
            let s = *s;
            let d = p.d;
            let omega = surface_area(d);
            let exactness = 2 * n_max;
            let t_rule =
                gauss_jacobi_01(p.beta + s as f64 + d as f64 - 1.0, 0.0, exactness / 2 + 1)?;
            let s_rule = sphere_quadrature(d, exactness)?;

            // Volume part: values of the s-th derivative on the product
            // grid, from exact coefficient vectors.
            let mut vol_weights = Vec::new();
            let mut vol_values = vec![Vec::new(); indices.len()];
            let mut rim_values = vec![vec![Vec::new(); s]; indices.len()];
            for (row, idx) in indices.iter().enumerate() {
                let elem = ConePolynomial::from_sobolev_basis(p, idx)?;
                let stack = elem.derivative_stack(s);
                for (&t, &wt) in t_rule.nodes.iter().zip(&t_rule.weights) {
                    for (xi, &ws) in s_rule.nodes.iter().zip(&s_rule.weights) {
                        if row == 0 {
                            vol_weights.push(wt * ws / omega);
                        }
                        vol_values[row].push(stack[s].eval(xi, t));
                    }
                }
                for (k, rim_k) in rim_values[row].iter_mut().enumerate() {
                    for xi in &s_rule.nodes {
                        rim_k.push(stack[k].eval(xi, 1.0));
                    }
                }
            }
            let mut gram = weighted_gram(&vol_values, &vol_weights);
            for (k, &lambda) in lambdas.iter().enumerate() {
                for i in 0..indices.len() {
                    for j in 0..indices.len() {
                        let rim: f64 = rim_values[i][k]
                            .iter()
                            .zip(&rim_values[j][k])
                            .zip(&s_rule.weights)
                            .map(|((a, b), &w)| a * b * w)
                            .sum();
                        gram[i][j] += lambda / omega * rim;
                    }
                }
            }
            Ok((indices, gram))
        }
    }
}

fn weighted_gram(values: &[Vec<f64>], weights: &[f64]) -> Vec<Vec<f64>> {
    let n = values.len();
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let dot: f64 = values[i]
                .iter()
                .zip(&values[j])
                .zip(weights)
                .map(|((a, b), &w)| a * b * w)
                .sum();
            gram[i][j] = dot;
            gram[j][i] = dot;
        }
    }
    gram
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit(d: usize, seed: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..d).map(|i| ((seed * 7 + i * 13) as f64).sin()).collect();
        let norm: f64 = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
        raw.iter().map(|c| c / norm).collect()
    }

    #[test]
    fn space_dimensions() {
        assert_eq!(cone_space_dim(2, 0), 1);
        assert_eq!(cone_space_dim(2, 3), 7);
        assert_eq!(cone_space_dim(3, 2), 9);
        for &d in &[2usize, 3] {
            for n in 0..=6 {
                assert_eq!(basis_indices(d, n).len(), cone_space_dim(d, n));
            }
        }
    }

    #[test]
    fn degree_zero_element_is_constant() {
        let p = ConeParams::ordinary(2, 0.0, 0.0).unwrap();
        let idx = BasisIndex::new(2, 0, 0, 1).unwrap();
        for i in 0..5 {
            let pt = ConePoint::new(unit(2, i), 0.2 * i as f64).unwrap();
            assert_abs_diff_eq!(basis_eval(&p, &idx, &pt).unwrap(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn top_mode_is_solid_harmonic() {
        let p = ConeParams::ordinary(3, 1.0, 0.5).unwrap();
        let idx = BasisIndex::new(3, 2, 2, 3).unwrap();
        let pt = ConePoint::new(unit(3, 4), 0.7).unwrap();
        let direct = basis_eval(&p, &idx, &pt).unwrap();
        let solid = pt.t.powi(2) * harmonic_eval_unchecked(3, 2, 3, &pt.xi);
        assert_abs_diff_eq!(direct, solid, epsilon = 1e-13);
    }

    #[test]
    fn rim_value_matches_jacobi_endpoint() {
        // At t = 1 the radial argument is -1, where
        // P_n^{(a,g)}(-1) = (-1)^n (g+1)_n / n!.
        let p = ConeParams::ordinary(2, 0.0, 0.0).unwrap();
        let idx = BasisIndex::new(2, 2, 0, 1).unwrap();
        let pt = ConePoint::new(vec![1.0, 0.0], 1.0).unwrap();
        let v = basis_eval(&p, &idx, &pt).unwrap();
        let expect = pochhammer(1.0, 2) / factorial(2);
        assert_abs_diff_eq!(v, expect, epsilon = 1e-13);
    }

    #[test]
    fn coefficient_form_matches_pointwise_eval() {
        let p = ConeParams::ordinary(2, 1.0, 0.5).unwrap();
        for n in 0..=5 {
            for idx in basis_indices(2, n) {
                let cp = ConePolynomial::from_ordinary_basis(&p, &idx).unwrap();
                for i in 0..4 {
                    let pt = ConePoint::new(unit(2, i + n), 0.1 + 0.2 * i as f64).unwrap();
                    let a = basis_eval(&p, &idx, &pt).unwrap();
                    let b = cp.eval(&pt.xi, pt.t);
                    assert_abs_diff_eq!(a, b, epsilon = 1e-11);
                }
            }
        }
    }

    #[test]
    fn sobolev_coefficient_form_matches_closed_form_eval() {
        let p = ConeParams::sobolev(2, 0.0, 2, vec![1.0, 1.0]).unwrap();
        for n in 0..=6 {
            for idx in basis_indices(2, n) {
                let cp = ConePolynomial::from_sobolev_basis(&p, &idx).unwrap();
                for i in 0..4 {
                    let pt = ConePoint::new(unit(2, i + n), 0.15 + 0.2 * i as f64).unwrap();
                    let a = sobolev_basis_eval(&p, &idx, &pt).unwrap();
                    let b = cp.eval(&pt.xi, pt.t);
                    assert_abs_diff_eq!(a, b, epsilon = 1e-11);
                }
            }
        }
    }

    #[test]
    fn sobolev_low_range_factors_as_rim_power() {
        // For n - m = k <= s-1 the element is 2^k/k! (1-t)^k times the
        // solid harmonic.
        let p = ConeParams::sobolev(2, 0.0, 2, vec![1.0, 1.0]).unwrap();
        let idx = BasisIndex::new(2, 3, 2, 1).unwrap();
        let pt = ConePoint::new(unit(2, 2), 0.4).unwrap();
        let v = sobolev_basis_eval(&p, &idx, &pt).unwrap();
        let solid = pt.t.powi(2) * harmonic_eval_unchecked(2, 2, 1, &pt.xi);
        let expect = 2.0 * (1.0 - pt.t) * solid;
        assert_abs_diff_eq!(v, expect, epsilon = 1e-13);
    }

    #[test]
    fn sobolev_dt_at_rim_is_scaled_harmonic() {
        // For m > n - s and k = n - m, the k-th derivative at t = 1 is
        // (-2)^k Y(xi); other orders below s vanish there.
        let p = ConeParams::sobolev(3, 0.5, 3, vec![1.0, 1.0, 1.0]).unwrap();
        let (n, m, ell) = (4usize, 2usize, 3usize);
        let idx = BasisIndex::new(3, n, m, ell).unwrap();
        let pt = ConePoint::new(unit(3, 1), 1.0).unwrap();
        for k in 0..3 {
            let v = sobolev_basis_dt(&p, &idx, &pt, k).unwrap();
            let expect = if k == n - m {
                (-2f64).powi(k as i32) * harmonic_eval_unchecked(3, m, ell, &pt.xi)
            } else {
                0.0
            };
            assert_abs_diff_eq!(v, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn sobolev_dt_matches_coefficient_differentiation() {
        let p = ConeParams::sobolev(2, 1.0, 2, vec![1.0, 1.0]).unwrap();
        for n in 0..=5 {
            for idx in basis_indices(2, n) {
                let cp = ConePolynomial::from_sobolev_basis(&p, &idx).unwrap();
                for k in 0..=2usize {
                    let exact = cp.dt_n(k);
                    for i in 0..3 {
                        let pt = ConePoint::new(unit(2, i), 0.2 + 0.25 * i as f64).unwrap();
                        let a = sobolev_basis_dt(&p, &idx, &pt, k).unwrap();
                        let b = exact.eval(&pt.xi, pt.t);
                        assert_abs_diff_eq!(a, b, epsilon = 1e-11);
                    }
                }
            }
        }
    }

    #[test]
    fn ordinary_dt_matches_coefficient_differentiation() {
        let p = ConeParams::ordinary(3, 0.5, 1.5).unwrap();
        for n in 0..=4 {
            for idx in basis_indices(3, n) {
                let cp = ConePolynomial::from_ordinary_basis(&p, &idx).unwrap();
                for k in 0..=3usize {
                    let exact = cp.dt_n(k);
                    for i in 0..3 {
                        let pt = ConePoint::new(unit(3, i + k), 0.15 + 0.3 * i as f64).unwrap();
                        let a = basis_dt(&p, &idx, &pt, k).unwrap();
                        let b = exact.eval(&pt.xi, pt.t);
                        assert_abs_diff_eq!(a, b, epsilon = 1e-10 * b.abs().max(1.0));
                    }
                }
            }
        }
    }

    #[test]
    fn split_eval_decouples_slots() {
        let p = ConeParams::ordinary(2, 0.0, 0.0).unwrap();
        let idx = BasisIndex::new(2, 3, 2, 1).unwrap();
        let cp = ConePolynomial::from_ordinary_basis(&p, &idx).unwrap();
        let xi = unit(2, 5);
        // The radial slot carries the Jacobi factor, the solid slot the
        // t^m harmonic weight.
        let jp = JacobiParams::new(p.radial_alpha(2), 0.0).unwrap();
        let radial = jacobi::jacobi_eval(jp, 1, 1.0 - 2.0 * 0.9).unwrap();
        let solid = 0.3f64.powi(2) * harmonic_eval_unchecked(2, 2, 1, &xi);
        assert_abs_diff_eq!(
            cp.eval_split(&xi, 0.3, 0.9),
            radial * solid,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            cp.eval_split(&xi, 0.4, 0.4),
            cp.eval(&xi, 0.4),
            epsilon = 1e-14
        );
    }

    #[test]
    fn sample_panels_lie_on_the_cone() {
        for &d in &[2usize, 3] {
            let panel = sample_points(d, 5, 7).unwrap();
            assert_eq!(panel.len(), 35);
            for pt in &panel {
                let norm: f64 = pt.xi.iter().map(|c| c * c).sum::<f64>().sqrt();
                assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
                assert!((0.05..=0.95).contains(&pt.t));
            }
        }
    }

    #[test]
    fn norm_matches_quadrature_small_case() {
        let p = ConeParams::ordinary(3, 0.0, 0.0).unwrap();
        let idx = BasisIndex::new(3, 2, 1, 1).unwrap();
        let v = cone_ip(
            &p,
            |x, t| {
                let pt = ConePoint {
                    xi: if t == 0.0 {
                        vec![0.0, 0.0, 1.0]
                    } else {
                        x.iter().map(|&c| c / t).collect()
                    },
                    t,
                };
                basis_eval(&p, &idx, &pt).unwrap()
            },
            |x, t| {
                let pt = ConePoint {
                    xi: if t == 0.0 {
                        vec![0.0, 0.0, 1.0]
                    } else {
                        x.iter().map(|&c| c / t).collect()
                    },
                    t,
                };
                basis_eval(&p, &idx, &pt).unwrap()
            },
            4,
        )
        .unwrap();
        let expect = basis_norm(&p, 2, 1).unwrap();
        assert_abs_diff_eq!(v, expect, epsilon = 1e-12 * expect.max(1.0));
        // Cross-check the assembled constant: (beta+d)_2/(beta+gamma+d+1)_2 h_1.
        let jp = JacobiParams::new(2.0 + 0.0 + 3.0 - 1.0, 0.0).unwrap();
        let manual =
            pochhammer(3.0, 2) / pochhammer(4.0, 2) * jacobi::jacobi_constants(jp, 1).unwrap().h_n;
        assert_abs_diff_eq!(expect, manual, epsilon = 1e-13);
    }

    #[test]
    fn trivial_sobolev_ip_of_constants() {
        let p = ConeParams::sobolev(2, 0.0, 1, vec![0.7]).unwrap();
        let one = ConePolynomial::from_basis_combination(&p, 0, |_| 1.0).unwrap();
        let v = sobolev_ip_cone_poly(&p, &one, &one).unwrap();
        assert_abs_diff_eq!(v, 0.7, epsilon = 1e-13);
    }

    #[test]
    fn wrong_mode_is_rejected() {
        let po = ConeParams::ordinary(2, 0.0, 0.0).unwrap();
        let ps = ConeParams::sobolev(2, 0.0, 1, vec![1.0]).unwrap();
        let idx = BasisIndex::new(2, 1, 0, 1).unwrap();
        let pt = ConePoint::new(vec![1.0, 0.0], 0.5).unwrap();
        assert!(basis_eval(&ps, &idx, &pt).is_err());
        assert!(sobolev_basis_eval(&po, &idx, &pt).is_err());
        assert!(ConeParams::sobolev(2, 0.0, 2, vec![1.0]).is_err());
        assert!(ConeParams::ordinary(2, -2.0, 0.0).is_err());
        assert!(ConePoint::new(vec![0.5, 0.0], 0.5).is_err());
        assert!(BasisIndex::new(2, 1, 2, 1).is_err());
    }
}

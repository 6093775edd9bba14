//! The second-order differential operator on the conic surface and its
//! spectral structure.
//!
//! In the parametrization `(xi, t)` of the surface the operator reads
//!
//! ```text
//! D_gamma = t(1-t) d^2/dt^2 + (d-1 - (d+gamma) t) d/dt + t^{-1} Delta_0,
//! ```
//!
//! with `Delta_0` the Laplace-Beltrami operator in `xi` and `d/dt` the
//! derivative along rays (`xi` held fixed). On a single mode
//! `f = p(t) t^m Y(xi)` the harmonic factor turns `Delta_0` into the
//! eigenvalue `-m(m+d-2)`, and collecting terms gives the exact
//! coefficient recurrence
//!
//! ```text
//! (D_gamma f) = w(t) t^m Y(xi),
//! w_j = c1(j+1) p_{j+1} - c2(j+1) p_j,
//! c1(i) = (m+i)(m+i+d-2) - m(m+d-2),
//! c2(i) = (m+i-1)(m+i-2+d+gamma),
//! ```
//!
//! in which the `t^{-1}` has cancelled identically: the would-be constant
//! term of the bracket vanishes as an integer identity, so the operator is
//! total on polynomials and no apex singularity ever appears.
//!
//! For the weight exponent `beta = -1` the basis elements are
//! eigenfunctions: `D_gamma S^{n,(-1,gamma)} = lambda_n S^{n,(-1,gamma)}`
//! with `lambda_n = -n(n+gamma+d-1)`. The Sobolev counterpart at
//! `gamma = -s` keeps this for `m <= n-s` and `m = n` but loses it on the
//! intermediate rim modes, and the true eigenspace is assembled from three
//! blocks by [`eigenspace_u`].

use crate::cone::{
    basis_indices, cone_space_dim, sample_points, BasisIndex, ConeParams, ConePoint,
    ConePolynomial, WeightMode,
};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::special::{binomial, factorial, pochhammer};
use crate::sphere::harmonic_dim;

/// Residuals below this bound classify an element as an eigenfunction.
pub const EIGEN_TOLERANCE: f64 = 1e-8;

/// Residuals above this bound certify an element is not an eigenfunction;
/// the gap to [`EIGEN_TOLERANCE`] keeps the two classes well separated.
pub const NOT_EIGEN_FLOOR: f64 = 1e-3;

/// The eigenvalue `lambda_n = -n (n + gamma + d - 1)` attached to the
/// degree-`n` spectral family.
pub fn eigenvalue(d: usize, n: usize, gamma: f64) -> f64 {
    -(n as f64) * (n as f64 + gamma + d as f64 - 1.0)
}

/// Applies the operator to a cone polynomial exactly, mode by mode.
pub fn apply_d(gamma: f64, f: &ConePolynomial) -> Result<ConePolynomial> {
    if !gamma.is_finite() {
        return Err(Error::NonFiniteParameter { name: "gamma" });
    }
    let d = f.d() as f64;
    let mut out = ConePolynomial::new(f.d());
    for (&(m, ell), p) in f.modes() {
        let mf = m as f64;
        let deg = p.degree();
        let mut w = vec![0.0; deg + 1];
        for (j, slot) in w.iter_mut().enumerate() {
            let i = (j + 1) as f64;
            let c1 = (mf + i) * (mf + i + d - 2.0) - mf * (mf + d - 2.0);
            let c2 = (mf + i - 1.0) * (mf + i - 2.0 + d + gamma);
            *slot = c1 * p.coeff(j + 1) - c2 * p.coeff(j);
        }
        out.add_mode(m, ell, Poly::from_coeffs(w));
    }
    Ok(out)
}

/// Applies the operator and evaluates at one cone point.
pub fn apply_d_at(gamma: f64, f: &ConePolynomial, pt: &ConePoint) -> Result<f64> {
    Ok(apply_d(gamma, f)?.eval(&pt.xi, pt.t))
}

/// How an element behaved against the eigen-equation on the sample panel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenClass {
    Eigen,
    NotEigen,
}

/// Result of testing one basis element against
/// `D_gamma Z = lambda_n Z`. The residual is normalized by the element's
/// sup over the panel, and the classification uses [`EIGEN_TOLERANCE`].
#[derive(Debug, Clone)]
pub struct EigenReport {
    pub index: BasisIndex,
    pub gamma: f64,
    pub lambda_expected: f64,
    pub residual: f64,
    pub classified: EigenClass,
}

impl EigenReport {
    /// Classification at a custom threshold.
    pub fn classify_with(&self, threshold: f64) -> EigenClass {
        if self.residual < threshold {
            EigenClass::Eigen
        } else {
            EigenClass::NotEigen
        }
    }
}

/// Normalized sup-panel residual of `D_gamma z = lambda z`.
fn eigen_residual(gamma: f64, z: &ConePolynomial, lambda: f64) -> Result<f64> {
    let r = apply_d(gamma, z)?.sub(&z.scale(lambda));
    let panel = sample_points(z.d(), 8, 5)?;
    let mut sup_r = 0.0f64;
    let mut sup_z = 0.0f64;
    for pt in &panel {
        sup_r = sup_r.max(r.eval(&pt.xi, pt.t).abs());
        sup_z = sup_z.max(z.eval(&pt.xi, pt.t).abs());
    }
    Ok(sup_r / sup_z.max(f64::MIN_POSITIVE))
}

/// Pointwise `D_gamma` on a single basis element, assembled from the
/// recurrence-based derivative ladders so high degrees stay accurate:
/// with `B_k = p^(k)(t) t^m Y(xi)`,
///
/// ```text
/// D_gamma = t(1-t) B_2 + [2m(1-t) + d-1 - (d+gamma) t] B_1
///           - m(m+d+gamma-1) B_0.
/// ```
fn apply_d_on_basis(
    p: &ConeParams,
    gamma: f64,
    idx: &BasisIndex,
    pt: &ConePoint,
) -> Result<(f64, f64)> {
    let ladder = |k: usize| -> Result<f64> {
        match &p.mode {
            WeightMode::Ordinary { .. } => crate::cone::basis_dt(p, idx, pt, k),
            WeightMode::Sobolev { .. } => crate::cone::sobolev_basis_dt(p, idx, pt, k),
        }
    };
    let b0 = ladder(0)?;
    let b1 = ladder(1)?;
    let b2 = ladder(2)?;
    let (df, mf, t) = (p.d as f64, idx.m as f64, pt.t);
    let value = t * (1.0 - t) * b2 + (2.0 * mf * (1.0 - t) + df - 1.0 - (df + gamma) * t) * b1
        - mf * (mf + df + gamma - 1.0) * b0;
    Ok((value, b0))
}

/// Tests one basis element of the spectral family (`beta = -1`) against
/// the eigen-equation of its degree. Ordinary mode checks
/// `S^{n,(-1,gamma)}`; Sobolev mode checks `S^{n,(-1,-s)}` against
/// `lambda_n = -n(n-s+d-1)`, where only `m <= n-s` and `m = n` are
/// expected to pass for `s >= 2`.
pub fn eigen_check(p: &ConeParams, idx: &BasisIndex) -> Result<EigenReport> {
    if (p.beta + 1.0).abs() > 1e-12 {
        return Err(Error::ParameterOutOfRange {
            name: "beta",
            value: p.beta,
            bound: -1.0,
        });
    }
    let gamma = match &p.mode {
        WeightMode::Ordinary { gamma } => *gamma,
        WeightMode::Sobolev { s, .. } => -(*s as f64),
    };
    let idx = BasisIndex::new(p.d, idx.n, idx.m, idx.ell)?;
    let lambda = eigenvalue(p.d, idx.n, gamma);
    let panel = sample_points(p.d, 8, 5)?;
    let mut sup_r = 0.0f64;
    let mut sup_z = 0.0f64;
    for pt in &panel {
        let (dz, z) = apply_d_on_basis(p, gamma, &idx, pt)?;
        sup_r = sup_r.max((dz - lambda * z).abs());
        sup_z = sup_z.max(z.abs());
    }
    let residual = sup_r / sup_z.max(f64::MIN_POSITIVE);
    let classified = if residual < EIGEN_TOLERANCE {
        EigenClass::Eigen
    } else {
        EigenClass::NotEigen
    };
    Ok(EigenReport {
        index: idx,
        gamma,
        lambda_expected: lambda,
        residual,
        classified,
    })
}

/// A degree-`n` eigenfunction candidate `q_j(t) Y(x)` with
/// `q_j(t) = sum_i a_{j,i} (1-t)^i` monic in `(1-t)^j` and a harmonic
/// factor of degree `n - j`.
#[derive(Debug, Clone)]
pub struct ZCandidate {
    pub j: usize,
    pub n: usize,
    pub gamma: f64,
    pub d: usize,
    /// Coefficients `a_{j,0..=j}` of the `(1-t)^i` expansion.
    pub coeffs: Vec<f64>,
    /// Degree of the attached harmonic factor, `n - j`.
    pub harmonic_degree: usize,
}

impl ZCandidate {
    /// The radial factor `q_j` as a polynomial in `t`.
    pub fn radial_poly(&self) -> Poly {
        let rim = Poly::from_coeffs(vec![1.0, -1.0]);
        let mut q = Poly::zero();
        for (i, &a) in self.coeffs.iter().enumerate() {
            q = &q + &rim.powi(i).scale(a);
        }
        q
    }

    /// The full candidate `q_j(t) Y_ell^{n-j}(x)`.
    pub fn assemble(&self, ell: usize) -> Result<ConePolynomial> {
        let dim = harmonic_dim(self.d, self.harmonic_degree);
        if ell == 0 || ell > dim {
            return Err(Error::InvalidIndex {
                n: self.n,
                m: self.harmonic_degree,
                ell,
                reason: "ell must lie in 1..=dim of the harmonic space",
            });
        }
        let mut out = ConePolynomial::new(self.d);
        out.add_mode(self.harmonic_degree, ell, self.radial_poly());
        Ok(out)
    }
}

fn check_candidate_degeneracy(j: usize, n: usize, gamma: f64, d: usize) -> Result<()> {
    for k in 1..=j {
        if (2.0 * n as f64 + gamma + d as f64 - 1.0 - k as f64).abs() < 1e-12 {
            return Err(Error::DegenerateCandidate { n, j, k });
        }
    }
    Ok(())
}

/// Coefficients of the unique monic-in-`(1-t)^j` radial factor that makes
/// `q_j(t) Y^{n-j}(x)` a degree-`n` eigenfunction:
///
/// ```text
/// a_{j,i} = (-1)^{j-i} (i+1)_{j-i} (gamma+i+1)_{j-i}
///           / [(j-i)! (2n+gamma+d-1-j+i)_{j-i}].
/// ```
///
/// Defined only when `2n+gamma+d-1-k` stays away from zero for
/// `k = 1..=j`; the offending `k` is reported otherwise.
pub fn z_coefficients(j: usize, n: usize, gamma: f64, d: usize) -> Result<ZCandidate> {
    if !gamma.is_finite() {
        return Err(Error::NonFiniteParameter { name: "gamma" });
    }
    if j > n {
        return Err(Error::InvalidIndex {
            n,
            m: j,
            ell: 1,
            reason: "the radial degree j must not exceed the total degree n",
        });
    }
    check_candidate_degeneracy(j, n, gamma, d)?;
    let mut coeffs = Vec::with_capacity(j + 1);
    for i in 0..=j {
        let r = j - i;
        let sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
        let num = pochhammer(i as f64 + 1.0, r) * pochhammer(gamma + i as f64 + 1.0, r);
        let den = factorial(r)
            * pochhammer(
                2.0 * n as f64 + gamma + d as f64 - 1.0 - j as f64 + i as f64,
                r,
            );
        coeffs.push(sign * num / den);
    }
    Ok(ZCandidate {
        j,
        n,
        gamma,
        d,
        coeffs,
        harmonic_degree: n - j,
    })
}

/// Closed form of the same radial factor: a degree-`j` Jacobi polynomial
/// with parameters `(2(n-j)+d-2, gamma)` in the argument `1-2t`, scaled by
/// `j! / (2n+gamma+d-j-1)_j`. Computed through the terminating
/// hypergeometric sum, which stays valid for `gamma <= -1` where the
/// recurrence-based constructors refuse the parameter range.
pub fn z_radial_closed_form(j: usize, n: usize, gamma: f64, d: usize) -> Result<Poly> {
    check_candidate_degeneracy(j, n, gamma, d)?;
    let alpha = 2.0 * (n - j) as f64 + d as f64 - 2.0;
    let scale = factorial(j) / pochhammer(2.0 * n as f64 + gamma + d as f64 - 1.0 - j as f64, j);
    Ok(shifted_jacobi_poly(alpha, gamma, j).scale(scale))
}

/// `P_j^{(alpha, beta)}(1 - 2t)` as a polynomial in `t`, by the
/// terminating hypergeometric sum
/// `[(alpha+1)_j / j!] sum_k [(-j)_k (j+alpha+beta+1)_k / ((alpha+1)_k k!)] t^k`;
/// needs `alpha > -1` but allows any `beta`.
fn shifted_jacobi_poly(alpha: f64, beta: f64, j: usize) -> Poly {
    let lead = pochhammer(alpha + 1.0, j) / factorial(j);
    let mut coeffs = Vec::with_capacity(j + 1);
    for k in 0..=j {
        let num = pochhammer(-(j as f64), k) * pochhammer(j as f64 + alpha + beta + 1.0, k);
        let den = pochhammer(alpha + 1.0, k) * factorial(k);
        coeffs.push(lead * num / den);
    }
    Poly::from_coeffs(coeffs)
}

/// The degree-`n` eigenspace of the operator at `gamma = -s`, `s >= 2`,
/// with the weight exponent `beta = -1`: all elements share the eigenvalue
/// `-n(n-s+d-1)`.
#[derive(Debug, Clone)]
pub struct EigenspaceU {
    pub n: usize,
    pub s: usize,
    pub d: usize,
    pub lambda: f64,
    /// Basis of the eigenspace: solid harmonics of degree `n`, the
    /// radial-times-harmonic candidates for `j = 1..s-1`, and the
    /// `(1-t)^s`-multiplied ordinary basis of degree `n-s`.
    pub elements: Vec<ConePolynomial>,
    /// Dimension `C(n+d-1, d)` quoted for this eigenspace; kept alongside
    /// the constructed count because the two disagree for `d = 2`.
    pub quoted_dim: usize,
    /// Dimension of the full degree-`n` orthogonal component, for
    /// comparison with the constructed count.
    pub component_dim: usize,
}

/// Assembles the degree-`n` eigenspace at `gamma = -s`:
///
/// ```text
/// U_n = H_n  u  { q_j(t) H_{n-j} : j = 1..s-1 }  u  (1-t)^s V_{n-s},
/// ```
///
/// where `H_k` are solid harmonics, `q_j` the [`z_coefficients`] radial
/// factors at `gamma = -s`, and `V_{n-s}` the ordinary basis for the
/// weight exponents `(-1, s)`. Degenerate `(n, j)` pairs are reported as
/// errors rather than silently skipped.
pub fn eigenspace_u(n: usize, s: usize, d: usize) -> Result<EigenspaceU> {
    if s < 2 {
        return Err(Error::InvalidSmoothness {
            s,
            reason: "the eigenspace construction needs s >= 2",
        });
    }
    let gamma = -(s as f64);
    let mut elements = Vec::new();

    for ell in 1..=harmonic_dim(d, n) {
        let mut h = ConePolynomial::new(d);
        h.add_mode(n, ell, Poly::constant(1.0));
        elements.push(h);
    }

    for j in 1..=(s - 1).min(n) {
        let cand = z_coefficients(j, n, gamma, d)?;
        for ell in 1..=harmonic_dim(d, n - j) {
            elements.push(cand.assemble(ell)?);
        }
    }

    if n >= s {
        let inner = ConeParams::ordinary(d, -1.0, s as f64)?;
        let rim = Poly::from_coeffs(vec![1.0, -1.0]).powi(s);
        for idx in basis_indices(d, n - s) {
            let g = ConePolynomial::from_ordinary_basis(&inner, &idx)?;
            elements.push(g.mul_radial(&rim));
        }
    }

    Ok(EigenspaceU {
        n,
        s,
        d,
        lambda: eigenvalue(d, n, gamma),
        elements,
        quoted_dim: binomial(n + d - 1, d).round() as usize,
        component_dim: cone_space_dim(d, n),
    })
}

/// Checks every constructed eigenspace element against the eigen-equation,
/// returning the largest normalized residual.
pub fn eigenspace_residual(space: &EigenspaceU) -> Result<f64> {
    let gamma = -(space.s as f64);
    let mut worst = 0.0f64;
    for z in &space.elements {
        worst = worst.max(eigen_residual(gamma, z, space.lambda)?);
    }
    Ok(worst)
}

fn d_lemma_sides(
    d: usize,
    k: usize,
    gamma: f64,
    p: &Poly,
    m: usize,
    ell: usize,
) -> Result<(ConePolynomial, ConePolynomial)> {
    let rim = Poly::from_coeffs(vec![1.0, -1.0]);
    let mut f = ConePolynomial::new(d);
    f.add_mode(m, ell, p * &rim.powi(k));
    let lhs = apply_d(gamma, &f)?;

    let mut g = ConePolynomial::new(d);
    g.add_mode(m, ell, p.clone());
    let shifted = apply_d(gamma + 2.0 * k as f64, &g)?.mul_radial(&rim.powi(k));
    let correction = if k == 0 {
        ConePolynomial::new(d)
    } else {
        let df = d as f64;
        let slope = Poly::from_coeffs(vec![df - 1.0, -(df + gamma + k as f64 - 1.0)]);
        g.mul_radial(&(&rim.powi(k - 1).scale(k as f64) * &slope))
    };
    Ok((lhs, shifted.sub(&correction)))
}

/// Residual at one point of the rim-factor commutation identity
///
/// ```text
/// D_gamma[(1-t)^k p Y] = (1-t)^k D_{gamma+2k}[p Y]
///                        - k (1-t)^{k-1} [d-1 - (d+gamma+k-1) t] p Y,
/// ```
///
/// which holds as an exact polynomial identity for every `k`.
pub fn verify_d_lemma(
    d: usize,
    k: usize,
    gamma: f64,
    p: &Poly,
    m: usize,
    ell: usize,
    pt: &ConePoint,
) -> Result<f64> {
    let (lhs, rhs) = d_lemma_sides(d, k, gamma, p, m, ell)?;
    Ok((lhs.eval(&pt.xi, pt.t) - rhs.eval(&pt.xi, pt.t)).abs())
}

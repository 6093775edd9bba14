//! Fourier coefficients, projection operators, and near-best approximation
//! on the conic surface.
//!
//! For either weight mode the degree-`n` component of a function is
//!
//! ```text
//! proj_n f = sum_{m,l} fhat_{m,l}^n S_{m,l}^n,   fhat = <f, S> / h_{n,m},
//! ```
//!
//! where the inner product, basis, and norms come from [`crate::cone`].
//! Partial sums of the slices reproduce polynomials exactly; the smoothed
//! sums
//!
//! ```text
//! Q_{n,eta} f = sum_{k=0}^{2n} eta(k/n) proj_k f
//! ```
//!
//! with an admissible cut-off `eta` leave polynomials of degree at most `n`
//! untouched and realize near-best approximation for general functions.
//!
//! Ordinary-mode coefficients are quadrature integrals. Sobolev-mode
//! coefficients are assembled structurally: the volume block from the
//! ordinary coefficients of the `s`-th t-derivative under the shifted
//! weight `t^{beta+s}`, the rim block from sphere integrals of the lower
//! derivatives at `t = 1`. The direct inner-product route is kept alongside
//! as an independent cross-check, as is an integral representation of the
//! Sobolev projection that never touches the Sobolev basis at all.

use crate::cone::{
    basis_indices, basis_norm, cone_oracle, sample_points, BasisIndex, ConeParams, ConePoint,
    ConePolynomial, WeightMode,
};
use crate::cone::{sobolev_basis_dt, sobolev_ip_cone};
use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiParams, MAX_DEGREE};
use crate::jacobi_sobolev::j_derivative;
use crate::poly::Poly;
use crate::quadrature::{cone_quadrature, gauss_jacobi_sym, gauss_legendre};
use crate::special::{factorial, pochhammer};
use crate::sphere::{
    harmonic_dim, harmonic_eval_unchecked, sphere_project, sphere_quadrature, surface_area,
};

/// Fourier coefficients of one function against the cone basis through a
/// fixed maximal degree. Entry order is `[n][m][ell-1]`.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    params: ConeParams,
    max_degree: usize,
    entries: Vec<Vec<Vec<f64>>>,
}

impl CoefficientTable {
    fn empty(params: ConeParams, max_degree: usize) -> Self {
        let entries = (0..=max_degree)
            .map(|n| {
                (0..=n)
                    .map(|m| vec![0.0; harmonic_dim(params.d, m)])
                    .collect()
            })
            .collect();
        CoefficientTable {
            params,
            max_degree,
            entries,
        }
    }

    pub fn params(&self) -> &ConeParams {
        &self.params
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// The coefficient at one basis index.
    pub fn get(&self, idx: &BasisIndex) -> Result<f64> {
        if idx.n > self.max_degree {
            return Err(Error::DegreeTooLarge {
                n: idx.n,
                max: self.max_degree,
            });
        }
        let idx = BasisIndex::new(self.params.d, idx.n, idx.m, idx.ell)?;
        Ok(self.entries[idx.n][idx.m][idx.ell - 1])
    }

    /// Iterates over `(index, coefficient)` pairs in degree order.
    pub fn iter(&self) -> impl Iterator<Item = (BasisIndex, f64)> + '_ {
        self.entries.iter().enumerate().flat_map(|(n, slice)| {
            slice.iter().enumerate().flat_map(move |(m, cs)| {
                cs.iter()
                    .enumerate()
                    .map(move |(e, &c)| (BasisIndex { n, m, ell: e + 1 }, c))
            })
        })
    }
}

/// An admissible cut-off: `eta(x) = 1` for `x <= 1`, `eta(x) = 0` for
/// `x >= 2`, nonincreasing in between.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffFunction {
    /// The standard partition-of-unity smooth step built from
    /// `u(x) = exp(-1/x)`: `eta(x) = u(2-x) / (u(2-x) + u(x-1))` on `(1, 2)`.
    SmoothStep,
    /// Piecewise-linear ramp `eta(x) = 2 - x` on `(1, 2)`.
    Linear,
}

fn bump(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

impl CutoffFunction {
    pub fn eval(self, x: f64) -> f64 {
        if x <= 1.0 {
            1.0
        } else if x >= 2.0 {
            0.0
        } else {
            match self {
                CutoffFunction::SmoothStep => {
                    let a = bump(2.0 - x);
                    a / (a + bump(x - 1.0))
                }
                CutoffFunction::Linear => 2.0 - x,
            }
        }
    }

    /// The weight applied to the degree-`k` slice of `Q_{n,eta}`; handles
    /// `n = 0`, where only the constant slice survives.
    fn weight(self, k: usize, n: usize) -> f64 {
        if k == 0 {
            1.0
        } else if n == 0 {
            0.0
        } else {
            self.eval(k as f64 / n as f64)
        }
    }
}

fn check_table_degree(max_degree: usize) -> Result<()> {
    if max_degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            n: max_degree,
            max: MAX_DEGREE,
        });
    }
    Ok(())
}

/// Computes the ordinary-mode Fourier coefficients of `f` through total
/// degree `max_degree` with a cone quadrature of the given polynomial
/// exactness; for polynomial `f` the result is exact when
/// `exactness >= max_degree + deg f`.
pub fn fourier_coeffs(
    mut f: impl FnMut(&[f64], f64) -> f64,
    p: &ConeParams,
    max_degree: usize,
    exactness: usize,
) -> Result<CoefficientTable> {
    let gamma = p.require_ordinary()?;
    check_table_degree(max_degree)?;
    let rule = cone_quadrature(p.d, p.beta, gamma, exactness)?;
    let mut table = CoefficientTable::empty(p.clone(), max_degree);
    for ((x, t), &w) in rule.nodes.iter().zip(&rule.weights) {
        let t = *t;
        let base = w * f(x, t);
        if base == 0.0 {
            continue;
        }
        let xi: Vec<f64> = if t == 0.0 {
            vec![0.0; p.d]
        } else {
            x.iter().map(|&c| c / t).collect()
        };
        let u = 1.0 - 2.0 * t;
        for m in 0..=max_degree {
            let tm = if m == 0 { 1.0 } else { t.powi(m as i32) };
            if tm == 0.0 {
                break;
            }
            let jp = JacobiParams::new(p.radial_alpha(m), gamma)?;
            let radial = jacobi::jacobi_eval_many(jp, max_degree - m, u)?;
            for ell in 1..=harmonic_dim(p.d, m) {
                let c = base * tm * harmonic_eval_unchecked(p.d, m, ell, &xi);
                for (q, r) in radial.iter().enumerate() {
                    table.entries[q + m][m][ell - 1] += c * r;
                }
            }
        }
    }
    for n in 0..=max_degree {
        for m in 0..=n {
            let h = basis_norm(p, n, m)?;
            for c in table.entries[n][m].iter_mut() {
                *c /= h;
            }
        }
    }
    Ok(table)
}

/// Radial (`m = 0`) expansion coefficients of a rotation-invariant target,
/// computed through a parameter-raising by-parts ladder that keeps full
/// *relative* precision at any coefficient magnitude.
///
/// The degree-`k` radial coefficient of `f(t)` under an ordinary cone
/// weight is a Jacobi coefficient in `u = 1 - 2t`. Integrating by parts
/// `k` times with the weighted derivative identity
///
/// ```text
/// d/du [(1-u)^{a+1} (1+u)^{b+1} P_{k-1}^{(a+1,b+1)}(u)]
///     = -2k (1-u)^a (1+u)^b P_k^{(a,b)}(u)
/// ```
///
/// moves the whole oscillation of `P_k` onto derivatives of the target:
///
/// ```text
/// int f P_k^{(a,b)} w^{(a,b)} du
///     = 1 / (2^k k!) int (d^k f / du^k) w^{(a+k,b+k)} du.
/// ```
///
/// When the `u`-derivatives of the target keep one sign (as for
/// exponentials), the right side has no cancellation, so the coefficient
/// is accurate in relative terms even when its absolute size is far below
/// the rounding unit of the direct quadrature in [`fourier_coeffs`]. That
/// is what makes the error of [`smoothed_eval`] resolvable past the point
/// where subtracting two `O(1)` values stalls at roughly 1e-13.
///
/// `g(k, u)` must return the `k`-th `u`-derivative of `u -> f((1-u)/2)`
/// for `0 <= k <= max_degree`; `npts` nodes are used for each raised
/// integral (30 is ample for entire targets). The returned vector is
/// indexed by degree and feeds the tail-series form of the smoothing
/// error,
///
/// ```text
/// f - Q_{n,eta} f = sum_{j>n} (1 - eta(j/n)) c_j P_j^{(a,gamma)}(1-2t).
/// ```
pub fn radial_coeffs_by_parts(
    g: &dyn Fn(usize, f64) -> f64,
    p: &ConeParams,
    max_degree: usize,
    npts: usize,
) -> Result<Vec<f64>> {
    let gamma = p.require_ordinary()?;
    check_table_degree(max_degree)?;
    let a = p.radial_alpha(0);
    let jp = JacobiParams::new(a, gamma)?;
    let mut out = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let raised = gauss_jacobi_sym(a + k as f64, gamma + k as f64, npts)?.integrate(|u| g(k, u));
        let mut numer = raised;
        for i in 1..=k {
            numer /= 2.0 * i as f64;
        }
        let denom = gauss_jacobi_sym(a, gamma, k + 2)?.integrate(|u| {
            let v = jacobi::jacobi_eval(jp, k, u).expect("degree checked");
            v * v
        });
        out.push(numer / denom);
    }
    Ok(out)
}

/// Computes the Sobolev-mode Fourier coefficients of `f` through total
/// degree `max_degree`. The oracle `f(k, x, t)` must return the `k`-th
/// t-derivative (x fixed) for `0 <= k <= s`.
///
/// The volume block (`m <= n - s`) is obtained from the ordinary
/// coefficients `ghat` of `g = d^s f / dt^s` under the shifted weight
/// `t^{beta+s}`:
///
/// ```text
/// fhat_{m,l}^n = ghat_{m,l}^{n-s} / [(-2)^s A_{n-m-s}^{(s+2m+beta+d-1, 0)}],
/// ```
///
/// and the rim block (`n - s < m <= n`) from sphere integrals
///
/// ```text
/// fhat_{m,l}^n = (-2)^{m-n} (1/omega_d) \int d^{n-m}f/dt^{n-m}(xi, 1)
///                Y_l^m(xi) dsigma(xi).
/// ```
pub fn sobolev_fourier_coeffs(
    f: &dyn Fn(usize, &[f64], f64) -> f64,
    p: &ConeParams,
    max_degree: usize,
    exactness: usize,
) -> Result<CoefficientTable> {
    let (s, _) = p.require_sobolev()?;
    check_table_degree(max_degree)?;
    let mut table = CoefficientTable::empty(p.clone(), max_degree);

    if max_degree >= s {
        let shifted = ConeParams::ordinary(p.d, p.beta + s as f64, 0.0)?;
        let g_table = fourier_coeffs(|x, t| f(s, x, t), &shifted, max_degree - s, exactness)?;
        let sign = (-2f64).powi(s as i32);
        for n in s..=max_degree {
            for m in 0..=(n - s) {
                let jp = JacobiParams::new(p.radial_alpha(m) + s as f64, 0.0)?;
                let denom = sign * jacobi::a_factor(jp, n - m - s);
                for (e, c) in table.entries[n][m].iter_mut().enumerate() {
                    *c = g_table.entries[n - s][m][e] / denom;
                }
            }
        }
    }

    let s_rule = sphere_quadrature(p.d, exactness)?;
    let omega = surface_area(p.d);
    let rim_vals: Vec<Vec<f64>> = (0..s)
        .map(|k| s_rule.nodes.iter().map(|xi| f(k, xi, 1.0)).collect())
        .collect();
    for n in 0..=max_degree {
        let m_lo = (n + 1).saturating_sub(s);
        for m in m_lo..=n {
            let k = n - m;
            let scale = (-0.5f64).powi(k as i32) / omega;
            for ell in 1..=harmonic_dim(p.d, m) {
                let mut acc = 0.0;
                for ((xi, &w), &gv) in s_rule.nodes.iter().zip(&s_rule.weights).zip(&rim_vals[k]) {
                    acc += w * gv * harmonic_eval_unchecked(p.d, m, ell, xi);
                }
                table.entries[n][m][ell - 1] = scale * acc;
            }
        }
    }
    Ok(table)
}

/// Computes the Sobolev-mode Fourier coefficients by direct quadrature of
/// the Sobolev inner product against each basis element. Slower than
/// [`sobolev_fourier_coeffs`] but structurally independent of it, which
/// makes the pair a dual-route consistency check.
pub fn sobolev_fourier_coeffs_direct(
    f: &dyn Fn(usize, &[f64], f64) -> f64,
    p: &ConeParams,
    max_degree: usize,
    exactness: usize,
) -> Result<CoefficientTable> {
    p.require_sobolev()?;
    check_table_degree(max_degree)?;
    let mut table = CoefficientTable::empty(p.clone(), max_degree);
    for n in 0..=max_degree {
        for idx in basis_indices(p.d, n) {
            let elem = move |k: usize, x: &[f64], t: f64| -> f64 {
                let xi: Vec<f64> = if t == 0.0 {
                    let mut e = vec![0.0; p.d];
                    e[0] = 1.0;
                    e
                } else {
                    x.iter().map(|&c| c / t).collect()
                };
                let pt = ConePoint { xi, t };
                sobolev_basis_dt(p, &idx, &pt, k).expect("valid basis index")
            };
            let ip = sobolev_ip_cone(p, f, &elem, exactness)?;
            table.entries[n][idx.m][idx.ell - 1] = ip / basis_norm(p, n, idx.m)?;
        }
    }
    Ok(table)
}

/// Core slice evaluator: the `k_deriv`-th t-derivative of the degree-`n`
/// component, with the solid-harmonic slot at `t xi` and the radial slot
/// at `v`. On-cone values use `v = t`.
fn slice_value(
    table: &CoefficientTable,
    n: usize,
    k_deriv: usize,
    xi: &[f64],
    t: f64,
    v: f64,
) -> Result<f64> {
    if n > table.max_degree {
        return Err(Error::DegreeTooLarge {
            n,
            max: table.max_degree,
        });
    }
    let p = &table.params;
    let u = 1.0 - 2.0 * v;
    let mut total = 0.0;
    for m in 0..=n {
        let q = n - m;
        let radial = match &p.mode {
            WeightMode::Ordinary { gamma } => {
                if k_deriv > q {
                    continue;
                }
                let alpha = p.radial_alpha(m);
                let jp = JacobiParams::new(alpha + k_deriv as f64, gamma + k_deriv as f64)?;
                let ladder = if k_deriv == 0 {
                    1.0
                } else {
                    (-1f64).powi(k_deriv as i32)
                        * pochhammer(q as f64 + alpha + gamma + 1.0, k_deriv)
                };
                ladder * jacobi::jacobi_eval(jp, q - k_deriv, u)?
            }
            WeightMode::Sobolev { s, .. } => {
                if k_deriv > q {
                    continue;
                }
                (-2f64).powi(k_deriv as i32)
                    * j_derivative(p.radial_alpha(m) + *s as f64, 0.0, *s, q, k_deriv, u)?
            }
        };
        let tm = if m == 0 {
            1.0
        } else if t == 0.0 {
            0.0
        } else {
            t.powi(m as i32)
        };
        if tm == 0.0 || radial == 0.0 {
            continue;
        }
        let mut harm = 0.0;
        for (e, &c) in table.entries[n][m].iter().enumerate() {
            if c != 0.0 {
                harm += c * harmonic_eval_unchecked(p.d, m, e + 1, xi);
            }
        }
        total += radial * tm * harm;
    }
    Ok(total)
}

/// Weighted sum of slice values `sum_j w(j) proj_j`, shared by the smoothed
/// evaluators.
fn weighted_slices(
    table: &CoefficientTable,
    j_max: usize,
    k_deriv: usize,
    weight: impl Fn(usize) -> f64,
    xi: &[f64],
    t: f64,
    v: f64,
) -> Result<f64> {
    let mut total = 0.0;
    for j in 0..=j_max.min(table.max_degree) {
        let w = weight(j);
        if w == 0.0 {
            continue;
        }
        total += w * slice_value(table, j, k_deriv, xi, t, v)?;
    }
    Ok(total)
}

/// Evaluates the degree-`n` projection component at a cone point.
pub fn project(table: &CoefficientTable, n: usize, pt: &ConePoint) -> Result<f64> {
    slice_value(table, n, 0, &pt.xi, pt.t, pt.t)
}

/// Evaluates the degree-`n` component at the split point with solid slot
/// `t xi` and radial slot `v`; integral representations evaluate here with
/// `v` off the cone.
pub fn project_split(
    table: &CoefficientTable,
    n: usize,
    xi: &[f64],
    t: f64,
    v: f64,
) -> Result<f64> {
    slice_value(table, n, 0, xi, t, v)
}

/// Evaluates the `k`-th t-derivative (x fixed) of the degree-`n` component.
pub fn project_dt(table: &CoefficientTable, n: usize, k: usize, pt: &ConePoint) -> Result<f64> {
    slice_value(table, n, k, &pt.xi, pt.t, pt.t)
}

/// Evaluates the partial sum of all components through degree `n`.
pub fn partial_sum(table: &CoefficientTable, n: usize, pt: &ConePoint) -> Result<f64> {
    weighted_slices(table, n, 0, |_| 1.0, &pt.xi, pt.t, pt.t)
}

/// Evaluates the smoothed operator `Q_{n,eta} = sum_k eta(k/n) proj_k` from
/// a coefficient table holding at least the degree-`2n` slices (fewer
/// slices truncate the tail the cut-off would keep).
pub fn smoothed_eval(
    table: &CoefficientTable,
    n: usize,
    eta: CutoffFunction,
    pt: &ConePoint,
) -> Result<f64> {
    smoothed_eval_dt(table, n, eta, 0, pt)
}

/// Evaluates the `k`-th t-derivative of the smoothed operator by the
/// parameter-ladder form of each slice derivative.
pub fn smoothed_eval_dt(
    table: &CoefficientTable,
    n: usize,
    eta: CutoffFunction,
    k: usize,
    pt: &ConePoint,
) -> Result<f64> {
    weighted_slices(table, 2 * n, k, |j| eta.weight(j, n), &pt.xi, pt.t, pt.t)
}

/// Evaluates the index-shifted smoothed operator
/// `sum_{j=0}^{2n-shift} eta((j+shift)/n) proj_j` applied to the table's
/// function; the `k`-fold derivative of `Q_{n,eta}` equals this operator
/// with `shift = k` applied to the `k`-th derivative under the shifted
/// weight parameters.
pub fn smoothed_shifted_eval(
    table: &CoefficientTable,
    n: usize,
    eta: CutoffFunction,
    shift: usize,
    pt: &ConePoint,
) -> Result<f64> {
    if 2 * n < shift {
        return Ok(0.0);
    }
    weighted_slices(
        table,
        2 * n - shift,
        0,
        |j| eta.weight(j + shift, n),
        &pt.xi,
        pt.t,
        pt.t,
    )
}

/// Exact coefficient form of the degree-`n` projection component.
pub fn projection_polynomial(table: &CoefficientTable, n: usize) -> Result<ConePolynomial> {
    if n > table.max_degree {
        return Err(Error::DegreeTooLarge {
            n,
            max: table.max_degree,
        });
    }
    ConePolynomial::from_basis_combination(&table.params, n, |idx| {
        if idx.n == n {
            table.entries[idx.n][idx.m][idx.ell - 1]
        } else {
            0.0
        }
    })
}

/// Near-best approximation of an ordinary-mode function: builds the
/// coefficient table through degree `2n` and evaluates the smoothed sum.
/// Reproduces polynomials of degree at most `n` exactly.
pub fn q_near_best(
    f: impl FnMut(&[f64], f64) -> f64,
    p: &ConeParams,
    n: usize,
    eta: CutoffFunction,
    pt: &ConePoint,
    exactness: usize,
) -> Result<f64> {
    let table = fourier_coeffs(f, p, 2 * n, exactness)?;
    smoothed_eval(&table, n, eta, pt)
}

/// Near-best approximation of a Sobolev-mode function supplied as a
/// derivative oracle.
pub fn sobolev_q_near_best(
    f: &dyn Fn(usize, &[f64], f64) -> f64,
    p: &ConeParams,
    n: usize,
    eta: CutoffFunction,
    pt: &ConePoint,
    exactness: usize,
) -> Result<f64> {
    let table = sobolev_fourier_coeffs(f, p, 2 * n, exactness)?;
    smoothed_eval(&table, n, eta, pt)
}

/// Evaluates the Sobolev projection through its integral representation,
/// without touching the Sobolev basis:
///
/// ```text
/// proj_n f (xi, t) = sum_{k<s} [(t-1)^k / k!] t^{n-k}
///                    proj_{n-k}^{sphere}[d^k f/dt^k(., 1)](xi)
///   + (-1)^s \int_t^1 [(v-t)^{s-1} / (s-1)!]
///                    proj_{n-s}^{beta+s, 0}(d^s f/dt^s)(t xi, v) dv,
/// ```
///
/// where the projection inside the integral is evaluated at the split
/// point: solid-harmonic slot at the original `x = t xi`, radial slot at
/// `v`. The sphere projections likewise ride on solid harmonics, which is
/// where the `t^{n-k}` factors come from. The `v`-integral uses a
/// Gauss-Legendre rule that is exact for polynomial oracles.
pub fn sobolev_project_integral(
    f: &dyn Fn(usize, &[f64], f64) -> f64,
    p: &ConeParams,
    n: usize,
    pt: &ConePoint,
    exactness: usize,
) -> Result<f64> {
    let (s, _) = p.require_sobolev()?;
    let d = p.d;
    let mut total = 0.0;

    for k in 0..s.min(n + 1) {
        let deg = n - k;
        let coeffs = sphere_project(|xi| f(k, xi, 1.0), deg, d, exactness)?;
        let mut proj = 0.0;
        for (e, &c) in coeffs.iter().enumerate() {
            if c != 0.0 {
                proj += c * harmonic_eval_unchecked(d, deg, e + 1, &pt.xi);
            }
        }
        let tpow = if deg == 0 { 1.0 } else { pt.t.powi(deg as i32) };
        total += (pt.t - 1.0).powi(k as i32) / factorial(k) * tpow * proj;
    }

    if n >= s {
        let shifted = ConeParams::ordinary(d, p.beta + s as f64, 0.0)?;
        let g_table = fourier_coeffs(|x, t| f(s, x, t), &shifted, n - s, exactness)?;
        let npts = (n + s).div_ceil(2) + 1;
        let gl = gauss_legendre(npts)?;
        let half = (1.0 - pt.t) / 2.0;
        let mut integral = 0.0;
        for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
            let v = pt.t + half * (x + 1.0);
            let kernel = (v - pt.t).powi(s as i32 - 1) / factorial(s - 1);
            integral += w * kernel * project_split(&g_table, n - s, &pt.xi, pt.t, v)?;
        }
        integral *= half;
        total += if s % 2 == 0 { integral } else { -integral };
    }
    Ok(total)
}

/// Residual of the derivative-projection commutation
/// `d/dt proj_n^{beta,gamma} f = proj_{n-1}^{beta+1,gamma+1} df/dt`
/// for a polynomial `f`: the maximum absolute difference of the two exact
/// reconstructions over a deterministic sample panel.
pub fn verify_commutation(f: &ConePolynomial, p: &ConeParams, n: usize) -> Result<f64> {
    let gamma = p.require_ordinary()?;
    let table = fourier_coeffs(cone_oracle(f), p, n, f.degree() + n)?;
    let lhs = projection_polynomial(&table, n)?.dt();
    let rhs = if n == 0 {
        ConePolynomial::new(p.d)
    } else {
        let shifted = ConeParams::ordinary(p.d, p.beta + 1.0, gamma + 1.0)?;
        let df = f.dt();
        let table_df = fourier_coeffs(cone_oracle(&df), &shifted, n - 1, df.degree() + n - 1)?;
        projection_polynomial(&table_df, n - 1)?
    };
    panel_sup(&lhs.sub(&rhs), p.d)
}

/// Residual of the Sobolev commutation
/// `d^s/dt^s proj_n^{beta,-s} f = proj_{n-s}^{beta+s,0} d^s f/dt^s`
/// for a polynomial `f` and `n >= s`. The Sobolev side uses the direct
/// inner-product coefficients, so the two sides are computed through
/// genuinely different pipelines.
pub fn verify_sobolev_commutation(f: &ConePolynomial, p: &ConeParams, n: usize) -> Result<f64> {
    let (s, _) = p.require_sobolev()?;
    if n < s {
        return Err(Error::DegreeTooSmall { n, min: s });
    }
    let stack = f.derivative_stack(s);
    let oracle = crate::cone::stack_oracle(&stack);
    let table = sobolev_fourier_coeffs_direct(&oracle, p, n, f.degree() + n)?;
    let lhs = projection_polynomial(&table, n)?.dt_n(s);

    let shifted = ConeParams::ordinary(p.d, p.beta + s as f64, 0.0)?;
    let ds = &stack[s];
    let table_g = fourier_coeffs(cone_oracle(ds), &shifted, n - s, ds.degree() + n - s)?;
    let rhs = projection_polynomial(&table_g, n - s)?;
    panel_sup(&lhs.sub(&rhs), p.d)
}

/// Residual of the factorization identity
/// `proj_n^{beta,-s}[(1-t)^s g] = (1-t)^s proj_{n-s}^{beta,s} g` for a
/// polynomial `g` and `n >= s`.
pub fn verify_factor_theorem(g: &ConePolynomial, p: &ConeParams, n: usize) -> Result<f64> {
    let (s, _) = p.require_sobolev()?;
    if n < s {
        return Err(Error::DegreeTooSmall { n, min: s });
    }
    let rim = Poly::from_coeffs(vec![1.0, -1.0]).powi(s);
    let f = g.mul_radial(&rim);
    let stack = f.derivative_stack(s);
    let oracle = crate::cone::stack_oracle(&stack);
    let table = sobolev_fourier_coeffs(&oracle, p, n, f.degree() + n)?;
    let lhs = projection_polynomial(&table, n)?;

    let aux = ConeParams::ordinary(p.d, p.beta, s as f64)?;
    let table_g = fourier_coeffs(cone_oracle(g), &aux, n - s, g.degree() + n - s)?;
    let rhs = projection_polynomial(&table_g, n - s)?.mul_radial(&rim);
    panel_sup(&lhs.sub(&rhs), p.d)
}

fn panel_sup(diff: &ConePolynomial, d: usize) -> Result<f64> {
    let panel = sample_points(d, 8, 6)?;
    Ok(panel
        .iter()
        .map(|pt| diff.eval(&pt.xi, pt.t).abs())
        .fold(0.0, f64::max))
}

/// One row of the approximation error table for a single smoothing degree.
#[derive(Debug, Clone)]
pub struct ErrorRow {
    pub n: usize,
    /// Sup over the evaluation grid of `|f - Q_{n,eta} f|`.
    pub sup_error: f64,
    /// Norm of the error induced by the mode's inner product, estimated by
    /// quadrature.
    pub l2_error: f64,
    /// Sup-grid errors of the t-derivatives `1..=k_max`.
    pub dt_sup_errors: Vec<f64>,
    /// Residual of the shifted-operator identity for the top derivative:
    /// the `k`-th derivative of `Q_{n,eta} f` against the index-shifted
    /// smoothed sum applied to the `k`-th derivative, with `k = s` in
    /// Sobolev mode and `k = k_max` in ordinary mode.
    pub identity_residual: f64,
}

/// Tabulates approximation errors of the smoothed operator over a list of
/// degrees. The oracle `f(k, x, t)` must supply t-derivatives through
/// `max(k_max, s)` in Sobolev mode and `k_max` in ordinary mode.
pub fn error_table(
    f: &dyn Fn(usize, &[f64], f64) -> f64,
    p: &ConeParams,
    n_list: &[usize],
    eta: CutoffFunction,
    k_max: usize,
    exactness: usize,
    grid: &[ConePoint],
) -> Result<Vec<ErrorRow>> {
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let table = match &p.mode {
            WeightMode::Ordinary { .. } => fourier_coeffs(|x, t| f(0, x, t), p, 2 * n, exactness)?,
            WeightMode::Sobolev { .. } => sobolev_fourier_coeffs(f, p, 2 * n, exactness)?,
        };

        let mut sup = 0.0f64;
        let mut dt_sup = vec![0.0f64; k_max];
        for pt in grid {
            let x = pt.x();
            let e0 = f(0, &x, pt.t) - smoothed_eval(&table, n, eta, pt)?;
            sup = sup.max(e0.abs());
            for (k, slot) in dt_sup.iter_mut().enumerate() {
                let ek = f(k + 1, &x, pt.t) - smoothed_eval_dt(&table, n, eta, k + 1, pt)?;
                *slot = slot.max(ek.abs());
            }
        }

        let (shift, shifted_params) = match &p.mode {
            WeightMode::Ordinary { gamma } => (
                k_max,
                ConeParams::ordinary(p.d, p.beta + k_max as f64, gamma + k_max as f64)?,
            ),
            WeightMode::Sobolev { s, .. } => {
                (*s, ConeParams::ordinary(p.d, p.beta + *s as f64, 0.0)?)
            }
        };
        let mut identity = 0.0f64;
        if 2 * n >= shift {
            let table_shift = fourier_coeffs(
                |x, t| f(shift, x, t),
                &shifted_params,
                2 * n - shift,
                exactness,
            )?;
            for pt in grid {
                let a = smoothed_eval_dt(&table, n, eta, shift, pt)?;
                let b = smoothed_shifted_eval(&table_shift, n, eta, shift, pt)?;
                identity = identity.max((a - b).abs());
            }
        } else {
            for pt in grid {
                let a = smoothed_eval_dt(&table, n, eta, shift, pt)?;
                identity = identity.max(a.abs());
            }
        }

        let l2 = match &p.mode {
            WeightMode::Ordinary { gamma } => {
                let rule = cone_quadrature(p.d, p.beta, *gamma, exactness)?;
                let mut acc = 0.0;
                for ((x, t), &w) in rule.nodes.iter().zip(&rule.weights) {
                    let xi: Vec<f64> = if *t == 0.0 {
                        vec![0.0; p.d]
                    } else {
                        x.iter().map(|&c| c / t).collect()
                    };
                    let pt = ConePoint { xi, t: *t };
                    let e = f(0, x, *t) - smoothed_eval(&table, n, eta, &pt)?;
                    acc += w * e * e;
                }
                acc.sqrt()
            }
            WeightMode::Sobolev { .. } => {
                let err = |k: usize, x: &[f64], t: f64| -> f64 {
                    let xi: Vec<f64> = if t == 0.0 {
                        let mut e = vec![0.0; p.d];
                        e[0] = 1.0;
                        e
                    } else {
                        x.iter().map(|&c| c / t).collect()
                    };
                    let pt = ConePoint { xi, t };
                    f(k, x, t) - smoothed_eval_dt(&table, n, eta, k, &pt).expect("valid degree")
                };
                sobolev_ip_cone(p, &err, &err, exactness)?.max(0.0).sqrt()
            }
        };

        rows.push(ErrorRow {
            n,
            sup_error: sup,
            l2_error: l2,
            dt_sup_errors: dt_sup,
            identity_residual: identity,
        });
    }
    Ok(rows)
}

/// Assembles the Taylor-remainder representation of the smoothed
/// approximation error of a Sobolev-mode polynomial at one point:
///
/// ```text
/// f - Q_{n,eta} f = sum_{m<s} [(t-1)^m / m!] { d^m f(x, 1)
///     - sum_{j<=2n-m} eta((j+m)/n) t^j proj_j^{sphere}[d^m f(., 1)](xi) }
///   + (-1)^s \int_t^1 [(v-t)^{s-1} / (s-1)!] { d^s f(x, v)
///     - sum_{j<=2n-s} eta((j+s)/n) proj_j^{beta+s,0}(d^s f)(x, v) } dv,
/// ```
///
/// with every mixed argument `(x, v)` read in the split convention (solid
/// slot at the original `x = t xi`, radial slot at `v`). For polynomial
/// `f` and sufficient exactness this reproduces `f - Q_{n,eta} f` to
/// rounding error.
pub fn smoothed_error_representation(
    f: &ConePolynomial,
    p: &ConeParams,
    n: usize,
    eta: CutoffFunction,
    pt: &ConePoint,
    exactness: usize,
) -> Result<f64> {
    let (s, _) = p.require_sobolev()?;
    let d = p.d;
    let stack = f.derivative_stack(s);
    let mut total = 0.0;

    for (m, fm) in stack.iter().enumerate().take(s) {
        let taylor = fm.eval_split(&pt.xi, pt.t, 1.0);
        let mut smoothed = 0.0;
        for j in 0..=(2 * n).saturating_sub(m) {
            let w = eta.weight(j + m, n);
            if w == 0.0 {
                continue;
            }
            let coeffs = sphere_project(|xi| fm.eval(xi, 1.0), j, d, exactness)?;
            let mut proj = 0.0;
            for (e, &c) in coeffs.iter().enumerate() {
                if c != 0.0 {
                    proj += c * harmonic_eval_unchecked(d, j, e + 1, &pt.xi);
                }
            }
            let tpow = if j == 0 { 1.0 } else { pt.t.powi(j as i32) };
            smoothed += w * tpow * proj;
        }
        total += (pt.t - 1.0).powi(m as i32) / factorial(m) * (taylor - smoothed);
    }

    let shifted = ConeParams::ordinary(d, p.beta + s as f64, 0.0)?;
    let g = &stack[s];
    let g_degree = (2 * n).saturating_sub(s);
    let table_g = fourier_coeffs(cone_oracle(g), &shifted, g_degree, exactness)?;
    let npts = (f.degree().max(2 * n) + s).div_ceil(2) + 1;
    let gl = gauss_legendre(npts)?;
    let half = (1.0 - pt.t) / 2.0;
    let mut integral = 0.0;
    for (&xnode, &w) in gl.nodes.iter().zip(&gl.weights) {
        let v = pt.t + half * (xnode + 1.0);
        let kernel = (v - pt.t).powi(s as i32 - 1) / factorial(s - 1);
        let direct = g.eval_split(&pt.xi, pt.t, v);
        let mut smoothed = 0.0;
        if 2 * n >= s {
            smoothed = weighted_slices(
                &table_g,
                2 * n - s,
                0,
                |j| eta.weight(j + s, n),
                &pt.xi,
                pt.t,
                v,
            )?;
        }
        integral += w * kernel * (direct - smoothed);
    }
    integral *= half;
    total += if s % 2 == 0 { integral } else { -integral };
    Ok(total)
}

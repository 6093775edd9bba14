//! Gauss-Jacobi quadrature on `[-1, 1]` and `[0, 1]`, plus the product
//! rule for the cone surface measure.
//!
//! Rules are built by the Golub-Welsch procedure: the three-term
//! recurrence coefficients of the weight define a symmetric tridiagonal
//! matrix whose eigenvalues are the nodes and whose first eigenvector
//! components give the weights. The eigenproblem is solved by implicit QL
//! sweeps that carry only the first row of the accumulated rotations,
//! which is all the weights need.

use crate::error::{Error, Result};
use crate::special::ln_gamma;
use crate::sphere::{sphere_quadrature, SphereRule};

/// Interval tag for a one-dimensional rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interval {
    /// `[-1, 1]` with weight `(1-x)^a (1+x)^b`.
    SymmetricUnit,
    /// `[0, 1]` with weight `t^a (1-t)^b`.
    Unit,
}

/// The weight a rule integrates against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightDescriptor {
    pub a: f64,
    pub b: f64,
    pub interval: Interval,
}

/// A one-dimensional positive quadrature rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Largest polynomial degree integrated exactly: `2 * npts - 1`.
    pub exactness: usize,
    pub weight: WeightDescriptor,
}

impl QuadratureRule {
    /// Applies the rule to `f`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }
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

/// Gauss-Jacobi rule on `[-1, 1]` for the weight `(1-x)^alpha (1+x)^beta`,
/// exact through degree `2 * npts - 1`.
pub fn gauss_jacobi_sym(alpha: f64, beta: f64, npts: usize) -> Result<QuadratureRule> {
    check_exponent("alpha", alpha)?;
    check_exponent("beta", beta)?;
    if npts == 0 {
        return Err(Error::EmptyQuadrature);
    }
    let n = npts;
    let (a, b) = (alpha, beta);

    // Recurrence coefficients of the monic Jacobi polynomials: diagonal
    // d[k] and squared off-diagonal bsq[k] (coupling k-1 to k).
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    diag[0] = (b - a) / (a + b + 2.0);
    for k in 1..n {
        let kf = k as f64;
        let denom = (2.0 * kf + a + b) * (2.0 * kf + a + b + 2.0);
        diag[k] = (b * b - a * a) / denom;
        let bsq = if k == 1 {
            4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0).powi(2) * (a + b + 3.0))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + a + b)
                / ((2.0 * kf + a + b).powi(2) * (2.0 * kf + a + b + 1.0) * (2.0 * kf + a + b - 1.0))
        };
        off[k - 1] = bsq.sqrt();
    }

    // Total mass of the weight: 2^{a+b+1} B(a+1, b+1).
    let mu0 = 2f64.powf(a + b + 1.0)
        * (ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp();

    let mut first_row = vec![0.0; n];
    first_row[0] = 1.0;
    symmetric_tridiagonal_eigen(&mut diag, &mut off, &mut first_row)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let nodes: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let weights: Vec<f64> = order
        .iter()
        .map(|&i| mu0 * first_row[i] * first_row[i])
        .collect();

    Ok(QuadratureRule {
        nodes,
        weights,
        exactness: 2 * n - 1,
        weight: WeightDescriptor {
            a,
            b,
            interval: Interval::SymmetricUnit,
        },
    })
}

/// Gauss-Legendre rule on `[-1, 1]` (unit weight).
pub fn gauss_legendre(npts: usize) -> Result<QuadratureRule> {
    gauss_jacobi_sym(0.0, 0.0, npts)
}

/// Gauss-Jacobi rule on `[0, 1]` for the weight `t^a (1-t)^b`, exact
/// through degree `2 * npts - 1`.
///
/// ```
/// use orthocone::quadrature::gauss_jacobi_01;
/// // \int_0^1 t^4 t^{1/2} dt = 2/11
/// let rule = gauss_jacobi_01(0.5, 0.0, 3).unwrap();
/// let v = rule.integrate(|t| t.powi(4));
/// assert!((v - 2.0 / 11.0).abs() < 1e-14);
/// ```
pub fn gauss_jacobi_01(a: f64, b: f64, npts: usize) -> Result<QuadratureRule> {
    // Substituting t = (1+x)/2 sends the [0,1] weight t^a (1-t)^b to the
    // [-1,1] Jacobi weight with alpha = b, beta = a, times 2^{-(a+b+1)}.
    let sym = gauss_jacobi_sym(b, a, npts)?;
    let scale = 2f64.powf(-(a + b + 1.0));
    Ok(QuadratureRule {
        nodes: sym.nodes.iter().map(|&x| 0.5 * (1.0 + x)).collect(),
        weights: sym.weights.iter().map(|&w| scale * w).collect(),
        exactness: sym.exactness,
        weight: WeightDescriptor {
            a,
            b,
            interval: Interval::Unit,
        },
    })
}

/// Implicit-shift QL iteration for a symmetric tridiagonal matrix.
///
/// `diag` holds the diagonal and is overwritten with eigenvalues; `off[i]`
/// couples rows `i` and `i+1` (the last slot is workspace). `first_row`
/// starts as `e_0` and finishes as the first row of the orthonormal
/// eigenvector matrix, so `first_row[i]^2` is the squared first component
/// of the eigenvector for `diag[i]`.
fn symmetric_tridiagonal_eigen(
    diag: &mut [f64],
    off: &mut [f64],
    first_row: &mut [f64],
) -> Result<()> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::EmptyQuadrature);
    }
    const MAX_SWEEPS: usize = 64;
    for l in 0..n {
        let mut sweeps = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::EigenNoConvergence {
                    iterations: MAX_SWEEPS,
                });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                f = first_row[i + 1];
                first_row[i + 1] = s * first_row[i] + c * f;
                first_row[i] = c * first_row[i] - s * f;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

/// A quadrature rule over the cone surface, normalized so that constants
/// integrate to 1. Applying it to `f * g` computes the cone inner product
/// of `f` and `g` directly, including the normalization constant.
#[derive(Debug, Clone)]
pub struct ConeRule {
    pub d: usize,
    /// Points `(x, t)` on the cone surface, `|x| = t`.
    pub nodes: Vec<(Vec<f64>, f64)>,
    /// Weights summing to 1.
    pub weights: Vec<f64>,
    pub exactness: usize,
}

impl ConeRule {
    /// Applies the rule to `F(x, t)`.
    pub fn integrate(&self, mut f: impl FnMut(&[f64], f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|((x, t), &w)| w * f(x, *t))
            .sum()
    }
}

/// Product rule realizing the normalized cone inner product with weight
/// `t^beta (1-t)^gamma`: Gauss-Jacobi in `t` (the surface factor `t^{d-1}`
/// folded into the exponent) times a sphere rule, with the total weight
/// normalized to 1.
pub fn cone_quadrature(d: usize, beta: f64, gamma: f64, exactness: usize) -> Result<ConeRule> {
    if !(d == 2 || d == 3) {
        return Err(Error::UnsupportedDimension { d });
    }
    if !beta.is_finite() {
        return Err(Error::NonFiniteParameter { name: "beta" });
    }
    if beta <= -(d as f64) {
        return Err(Error::ParameterOutOfRange {
            name: "beta",
            value: beta,
            bound: -(d as f64),
        });
    }
    check_exponent("gamma", gamma)?;
    let npts_t = exactness / 2 + 1;
    let t_rule = gauss_jacobi_01(beta + d as f64 - 1.0, gamma, npts_t)?;
    let s_rule: SphereRule = sphere_quadrature(d, exactness)?;

    let mut nodes = Vec::with_capacity(t_rule.nodes.len() * s_rule.nodes.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    for (&t, &wt) in t_rule.nodes.iter().zip(&t_rule.weights) {
        for (xi, &ws) in s_rule.nodes.iter().zip(&s_rule.weights) {
            let x: Vec<f64> = xi.iter().map(|&c| t * c).collect();
            nodes.push((x, t));
            weights.push(wt * ws);
        }
    }
    // Dividing by the rule's own total mass applies the normalization
    // constant exactly, cancelling the gamma-function error in the raw
    // weights.
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Ok(ConeRule {
        d,
        nodes,
        weights,
        exactness,
    })
}

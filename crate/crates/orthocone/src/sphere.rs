//! Real orthonormal spherical harmonics on the circle and the two-sphere,
//! with quadrature and projection.
//!
//! Harmonics are normalized against the averaged measure: the basis
//! `{Y_ell^m}` satisfies `(1/omega_d) \int Y Y' dsigma = delta`, where
//! `omega_d` is the surface area of the unit sphere in `R^d`. The circle
//! basis is `{1, sqrt(2) cos(m theta), sqrt(2) sin(m theta)}`; the
//! two-sphere basis consists of the real fully normalized harmonics built
//! from associated Legendre functions without the Condon-Shortley sign.
//!
//! For each degree `m` the index `ell` runs from 1 to `dim H_m^d`. On the
//! two-sphere `ell` enumerates the orders `-m..m` in ascending order, so
//! `ell = m + 1` is the zonal element.

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::special::{binomial, ln_gamma};
use std::f64::consts::PI;

/// Surface area of the unit sphere `S^{d-1}` in `R^d`:
/// `omega_d = 2 pi^{d/2} / Gamma(d/2)`.
pub fn surface_area(d: usize) -> f64 {
    let half = d as f64 / 2.0;
    2.0 * PI.powf(half) / ln_gamma(half).exp()
}

/// Dimension of the space of spherical harmonics of degree `m` on
/// `S^{d-1}`: 1 for `m = 0`, else `C(m+d-2, m) + C(m+d-3, m-1)`.
///
/// ```
/// use orthocone::sphere::harmonic_dim;
/// assert_eq!(harmonic_dim(2, 3), 2);
/// assert_eq!(harmonic_dim(3, 2), 5);
/// ```
pub fn harmonic_dim(d: usize, m: usize) -> usize {
    if m == 0 {
        return 1;
    }
    let c1 = binomial(m + d - 2, m);
    let c2 = binomial(m + d - 3, m - 1);
    (c1 + c2).round() as usize
}

/// Laplace-Beltrami eigenvalue on degree-`m` harmonics: `-m (m + d - 2)`.
pub fn laplace_beltrami_eigenvalue(d: usize, m: usize) -> f64 {
    -((m * (m + d - 2)) as f64)
}

fn check_dim(d: usize) -> Result<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { d })
    }
}

fn check_index(d: usize, m: usize, ell: usize) -> Result<()> {
    let dim = harmonic_dim(d, m);
    if ell == 0 || ell > dim {
        return Err(Error::InvalidIndex {
            n: m,
            m,
            ell,
            reason: "ell must lie in 1..=dim of the harmonic space",
        });
    }
    Ok(())
}

/// Associated Legendre values `P_m^k(z)` for `k <= m`, without the
/// Condon-Shortley sign.
fn assoc_legendre(m: usize, k: usize, z: f64) -> f64 {
    debug_assert!(k <= m);
    // P_k^k = (2k-1)!! (1 - z^2)^{k/2}
    let mut pkk = 1.0;
    let sin2 = (1.0 - z * z).max(0.0);
    for j in 1..=k {
        pkk *= (2 * j - 1) as f64;
    }
    pkk *= sin2.powf(k as f64 / 2.0);
    if m == k {
        return pkk;
    }
    // P_{k+1}^k = (2k+1) z P_k^k
    let mut prev = pkk;
    let mut cur = (2 * k + 1) as f64 * z * pkk;
    for l in (k + 2)..=m {
        let lf = l as f64;
        let kf = k as f64;
        let next = ((2.0 * lf - 1.0) * z * cur - (lf - 1.0 + kf) * prev) / (lf - kf);
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluates the orthonormal harmonic `Y_ell^m` at a unit vector `xi`.
///
/// The point must satisfy `|xi| = 1` to within 1e-12 and have length `d`.
pub fn harmonic_eval(d: usize, m: usize, ell: usize, xi: &[f64]) -> Result<f64> {
    check_dim(d)?;
    check_index(d, m, ell)?;
    if xi.len() != d {
        return Err(Error::InvalidPoint {
            reason: "point length does not match the dimension",
        });
    }
    let norm2: f64 = xi.iter().map(|&c| c * c).sum();
    if (norm2.sqrt() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidPoint {
            reason: "point is not on the unit sphere",
        });
    }
    Ok(harmonic_eval_unchecked(d, m, ell, xi))
}

/// [`harmonic_eval`] without the index and unit-norm validation, for use
/// inside quadrature loops that generate points on the sphere.
pub fn harmonic_eval_unchecked(d: usize, m: usize, ell: usize, xi: &[f64]) -> f64 {
    if m == 0 {
        return 1.0;
    }
    match d {
        2 => {
            let theta = xi[1].atan2(xi[0]);
            let mf = m as f64;
            if ell == 1 {
                2f64.sqrt() * (mf * theta).cos()
            } else {
                2f64.sqrt() * (mf * theta).sin()
            }
        }
        3 => {
            let z = xi[2];
            let theta = xi[1].atan2(xi[0]);
            let k = ell as isize - 1 - m as isize;
            let ka = k.unsigned_abs();
            let plm = assoc_legendre(m, ka, z);
            let ratio = (ln_gamma((m - ka) as f64 + 1.0) - ln_gamma((m + ka) as f64 + 1.0)).exp();
            if k == 0 {
                ((2 * m + 1) as f64).sqrt() * plm
            } else {
                let scale = (2.0 * (2 * m + 1) as f64 * ratio).sqrt();
                let angle = ka as f64 * theta;
                if k > 0 {
                    scale * plm * angle.cos()
                } else {
                    scale * plm * angle.sin()
                }
            }
        }
        _ => unreachable!("dimension is validated by callers"),
    }
}

/// Evaluates the solid harmonic `t^m Y_ell^m(x/t)` at a cone point
/// `(x, t)` with `|x| = t`. Degree-`m` harmonics extend to homogeneous
/// polynomials of degree `m`, so the apex value is 0 for `m >= 1` and 1
/// for `m = 0`.
pub fn solid_harmonic_eval(d: usize, m: usize, ell: usize, x: &[f64], t: f64) -> Result<f64> {
    check_dim(d)?;
    check_index(d, m, ell)?;
    if x.len() != d {
        return Err(Error::InvalidPoint {
            reason: "point length does not match the dimension",
        });
    }
    let norm: f64 = x.iter().map(|&c| c * c).sum::<f64>().sqrt();
    if (norm - t).abs() > 1e-10 {
        return Err(Error::InvalidPoint {
            reason: "|x| must equal t on the cone surface",
        });
    }
    if t == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    let xi: Vec<f64> = x.iter().map(|&c| c / t).collect();
    Ok(t.powi(m as i32) * harmonic_eval_unchecked(d, m, ell, &xi))
}

/// A positive quadrature rule on the unit sphere `S^{d-1}` whose weights
/// sum to the surface area `omega_d`.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub d: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub exactness: usize,
}

impl SphereRule {
    /// Applies the rule to `f`, computing the unnormalized surface
    /// integral.
    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(xi, &w)| w * f(xi))
            .sum()
    }

    /// Applies the rule with the `1/omega_d` averaging factor.
    pub fn average(&self, f: impl FnMut(&[f64]) -> f64) -> f64 {
        self.integrate(f) / surface_area(self.d)
    }
}

/// Builds a sphere rule exact on polynomials of degree `<= exactness`.
/// The circle uses equispaced points; the two-sphere a Gauss-Legendre
/// grid in the polar variable times equispaced azimuths.
pub fn sphere_quadrature(d: usize, exactness: usize) -> Result<SphereRule> {
    check_dim(d)?;
    match d {
        2 => {
            let n = exactness + 1;
            let w = 2.0 * PI / n as f64;
            let mut nodes = Vec::with_capacity(n);
            for j in 0..n {
                let theta = 2.0 * PI * j as f64 / n as f64;
                nodes.push(vec![theta.cos(), theta.sin()]);
            }
            Ok(SphereRule {
                d,
                nodes,
                weights: vec![w; n],
                exactness,
            })
        }
        3 => {
            let nz = exactness / 2 + 1;
            let naz = exactness + 1;
            let zrule = gauss_legendre(nz)?;
            let waz = 2.0 * PI / naz as f64;
            let mut nodes = Vec::with_capacity(nz * naz);
            let mut weights = Vec::with_capacity(nz * naz);
            for (&z, &wz) in zrule.nodes.iter().zip(&zrule.weights) {
                let r = (1.0 - z * z).max(0.0).sqrt();
                for j in 0..naz {
                    let theta = 2.0 * PI * j as f64 / naz as f64;
                    nodes.push(vec![r * theta.cos(), r * theta.sin(), z]);
                    weights.push(wz * waz);
                }
            }
            Ok(SphereRule {
                d,
                nodes,
                weights,
                exactness,
            })
        }
        _ => unreachable!(),
    }
}

/// Fourier coefficients of `f` against the degree-`n` harmonics:
/// `coeff[ell-1] = (1/omega_d) \int f Y_ell^n dsigma`, computed with a
/// rule of the declared exactness.
pub fn sphere_project(
    f: impl Fn(&[f64]) -> f64,
    n: usize,
    d: usize,
    exactness: usize,
) -> Result<Vec<f64>> {
    let rule = sphere_quadrature(d, exactness)?;
    let dim = harmonic_dim(d, n);
    let omega = surface_area(d);
    let mut coeffs = vec![0.0; dim];
    for (xi, &w) in rule.nodes.iter().zip(&rule.weights) {
        let fv = f(xi) * w / omega;
        for (ell, c) in coeffs.iter_mut().enumerate() {
            *c += fv * harmonic_eval_unchecked(d, n, ell + 1, xi);
        }
    }
    Ok(coeffs)
}

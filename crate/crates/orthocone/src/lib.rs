//! Orthogonal and Sobolev orthogonal polynomial systems on the surface of a
//! cone.
//!
//! The domain is the conic surface in `d+1` variables,
//!
//! ```text
//! V = { (x, t) : |x| = t, 0 <= t <= 1 },   x in R^d,
//! ```
//!
//! carrying the two-parameter weight `t^beta (1 - t)^gamma`. This crate
//! builds the classical orthogonal basis for that weight, the Sobolev
//! variants whose inner product involves `s` derivatives in `t` plus
//! boundary terms on the rim `t = 1`, the orthogonal projections and
//! near-best approximation operators assembled from them, and the
//! second-order differential operator that has the basis as eigenfunctions.
//!
//! Everything reduces to one-dimensional Jacobi technology tensored with
//! spherical harmonics, and the module layout follows that reduction:
//!
//! - [`jacobi`]: Jacobi polynomials, normalizations, derivative ladders,
//!   and the extension to negative integer parameters.
//! - [`jacobi_sobolev`]: the line version of the Sobolev inner product and
//!   its orthogonal basis built from iterated antiderivatives.
//! - [`sphere`]: real orthonormal spherical harmonics on the circle and the
//!   two-sphere, with exact quadrature rules.
//! - [`quadrature`]: Gauss-Jacobi rules on `[-1, 1]` and `[0, 1]`.
//! - [`cone`]: the orthogonal and Sobolev orthogonal bases on the conic
//!   surface, inner products, and Gram-matrix verification.
//! - [`projection`]: Fourier coefficients, partial sums, the integral
//!   representation of Sobolev projections, and smoothed partial-sum
//!   operators.
//! - [`diffop`]: the spectral differential operator, eigenvalue checks, and
//!   eigenspace construction in the degenerate-parameter range.
//!
//! The [`guide`] module mirrors the book chapters so their code samples are
//! compiled and run as doctests.

pub mod cone;
pub mod diffop;
mod error;
pub mod guide;
pub mod jacobi;
pub mod jacobi_sobolev;
pub mod poly;
pub mod projection;
pub mod quadrature;
pub mod special;
pub mod sphere;

pub use error::{Error, Result};

//! The book chapters, compiled as doctests.
//!
//! Each submodule's documentation is included verbatim from the guide
//! sources under `book/src`, so every code sample in the rendered book is
//! built and executed by `cargo test`. Read the chapters in order for a
//! tour from one-dimensional Jacobi polynomials to the spectral operator
//! on the cone surface.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/jacobi.md")]
pub mod jacobi_polynomials {}

#[doc = include_str!("../../../book/src/quadrature.md")]
pub mod quadrature_rules {}

#[doc = include_str!("../../../book/src/sobolev-line.md")]
pub mod sobolev_line {}

#[doc = include_str!("../../../book/src/sphere.md")]
pub mod spherical_harmonics {}

#[doc = include_str!("../../../book/src/cone-basis.md")]
pub mod cone_basis {}

#[doc = include_str!("../../../book/src/projections.md")]
pub mod projections {}

#[doc = include_str!("../../../book/src/approximation.md")]
pub mod near_best_approximation {}

#[doc = include_str!("../../../book/src/spectral-operator.md")]
pub mod spectral_operator {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod command_line_reports {}

//! Quadrature oracles: Beta-function moments, node/weight sanity across a
//! random parameter box, and the product structure of the cone rule.

use approx::assert_abs_diff_eq;
use orthocone::quadrature::{cone_quadrature, gauss_jacobi_01};
use orthocone::special::ln_gamma;
use orthocone::sphere::{sphere_quadrature, surface_area};
use proptest::prelude::*;

/// `int_0^1 t^{a+k} (1-t)^b dt` in closed form.
fn beta_moment(a: f64, b: f64, k: usize) -> f64 {
    (ln_gamma(a + k as f64 + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + k as f64 + b + 2.0)).exp()
}

/// All monomial moments up to the declared exactness match the closed
/// form, for node counts through 20.
#[test]
fn moments_match_beta_functions() {
    for &(a, b) in &[(0.0, 0.0), (1.5, 0.0), (-0.5, 2.0), (3.0, 0.5)] {
        for npts in 1..=20usize {
            let rule = gauss_jacobi_01(a, b, npts).unwrap();
            for k in 0..=(2 * npts - 1) {
                let got = rule.integrate(|t| t.powi(k as i32));
                let expect = beta_moment(a, b, k);
                assert_abs_diff_eq!(got, expect, epsilon = 1e-11 * expect);
            }
        }
    }
}

/// The degree just above the declared exactness is visibly not exact,
/// so the exactness declaration is sharp.
#[test]
fn exactness_declaration_is_sharp() {
    let rule = gauss_jacobi_01(0.0, 0.0, 3).unwrap();
    let got = rule.integrate(|t| t.powi(6));
    let expect = beta_moment(0.0, 0.0, 6);
    assert!((got - expect).abs() > 1e-8);
}

/// The cone rule is the normalized product of a radial Gauss-Jacobi rule
/// (with the surface factor folded into the exponent) and a sphere rule:
/// separable integrands factor accordingly.
#[test]
fn cone_rule_factors_for_separable_integrands() {
    for &d in &[2usize, 3] {
        for &(beta, gamma) in &[(0.0, 0.0), (1.0, 0.5)] {
            let rule = cone_quadrature(d, beta, gamma, 12).unwrap();
            let g = |t: f64| 0.3 + t * t * (1.0 - t);
            let h = |xi: &[f64]| 1.0 + xi[0] + xi[0] * xi[0];

            let got = rule.integrate(|x, t| {
                let xi: Vec<f64> = x.iter().map(|c| c / t.max(1e-300)).collect();
                g(t) * h(&xi)
            });

            let radial = gauss_jacobi_01(beta + d as f64 - 1.0, gamma, 8).unwrap();
            let sphere = sphere_quadrature(d, 12).unwrap();
            let expect = radial.integrate(g) / radial.integrate(|_| 1.0) * sphere.integrate(h)
                / surface_area(d);
            assert_abs_diff_eq!(got, expect, epsilon = 1e-11 * (1.0 + expect.abs()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Nodes stay strictly inside (0,1) and weights strictly positive
    /// across the random exponent box.
    #[test]
    fn nodes_interior_weights_positive(
        a in -0.9f64..4.0,
        b in -0.9f64..4.0,
        npts in 1usize..=16,
    ) {
        let rule = gauss_jacobi_01(a, b, npts).unwrap();
        prop_assert_eq!(rule.nodes.len(), npts);
        prop_assert_eq!(rule.weights.len(), npts);
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            prop_assert!(t > 0.0 && t < 1.0, "node {} out of (0,1)", t);
            prop_assert!(w > 0.0, "weight {} not positive", w);
        }
    }

    /// Total mass of the rule equals the Beta-function weight mass.
    #[test]
    fn total_mass_is_the_beta_integral(
        a in -0.9f64..4.0,
        b in -0.9f64..4.0,
    ) {
        let rule = gauss_jacobi_01(a, b, 6).unwrap();
        let got = rule.integrate(|_| 1.0);
        let expect = beta_moment(a, b, 0);
        prop_assert!((got - expect).abs() < 1e-11 * expect);
    }
}

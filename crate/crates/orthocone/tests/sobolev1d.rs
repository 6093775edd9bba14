//! The modified one-variable family: antiderivative construction,
//! boundary conditions, closed-form equivalence, and Sobolev
//! orthogonality of the full Gram matrix.

use approx::assert_abs_diff_eq;
use orthocone::jacobi::{jacobi_hat_poly, JacobiParams};
use orthocone::jacobi_sobolev::{
    j_closed_form_eval, j_eval, j_norm_square, j_poly, sobolev_ip_1d_poly, SobolevParams1D,
};
use orthocone::quadrature::gauss_legendre;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The s-th derivative of `J_n` recovers the rescaled Jacobi polynomial
/// coefficient for coefficient.
#[test]
fn sth_derivative_recovers_the_hat_family() {
    for &(alpha, beta) in &[(0.4, 0.0), (1.0, 0.5)] {
        for s in 1..=3usize {
            for n in s..=12usize {
                let j = j_poly(alpha, beta, s, n).unwrap();
                let hat = jacobi_hat_poly(JacobiParams::new(alpha, beta).unwrap(), n - s).unwrap();
                let diff = &j.derivative_n(s) - &hat;
                assert!(
                    diff.max_abs_coeff() < 1e-11,
                    "coefficient gap {} at s = {s}, n = {n}",
                    diff.max_abs_coeff()
                );
            }
        }
    }
}

/// Derivatives of order `k < s` at the left endpoint: `delta_{k,n}` below
/// the smoothness order and zero from `n >= s` on.
#[test]
fn left_endpoint_derivatives_are_kronecker() {
    let (alpha, beta) = (0.7, 0.2);
    for s in 1..=3usize {
        for n in 0..=10usize {
            let j = j_poly(alpha, beta, s, n).unwrap();
            for k in 0..s {
                let v = j.derivative_n(k).eval(-1.0);
                let expect = if k == n { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(v, expect, epsilon = 1e-12);
            }
        }
    }
}

/// The antiderivative construction agrees with the rim-factored closed
/// form at 50 random points for every `s <= 3`, `n <= 12`.
#[test]
fn antiderivative_and_closed_forms_coincide() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let points: Vec<f64> = (0..50).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for &alpha in &[0.0, 0.4, 1.5] {
        for s in 1..=3usize {
            for n in s..=12usize {
                for &t in &points {
                    let via_integrals = j_eval(alpha + s as f64, 0.0, s, n, t).unwrap();
                    let closed = j_closed_form_eval(alpha, s, n, t).unwrap();
                    assert_abs_diff_eq!(via_integrals, closed, epsilon = 1e-10);
                }
            }
        }
    }
}

/// One antiderivative layer checked against direct numerical integration
/// of the underlying hat polynomial from the left endpoint.
#[test]
fn single_layer_matches_numerical_integration() {
    let (alpha, beta) = (0.4, 0.0);
    let hat = jacobi_hat_poly(JacobiParams::new(alpha, beta).unwrap(), 2).unwrap();
    let rule = gauss_legendre(8).unwrap();
    for &t in &[-0.6, 0.2, 0.9] {
        // Map [-1,1] to [-1,t]: u = -1 + (x+1)(t+1)/2.
        let half = (t + 1.0) / 2.0;
        let integral: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| w * half * hat.eval(-1.0 + (x + 1.0) * half))
            .sum();
        let j = j_eval(alpha, beta, 1, 3, t).unwrap();
        assert_abs_diff_eq!(j, integral, epsilon = 1e-11);
    }
}

/// Full Gram matrix of `J_0..J_10`: diagonal within 1e-9, diagonal values
/// `mu_n` below the smoothness order and `h_hat_{n-s}` above it.
#[test]
fn gram_matrix_is_diagonal_with_stated_norms() {
    for s in 1..=2usize {
        let mu = vec![1.0; s];
        let p = SobolevParams1D::new(0.4, 0.0, s, mu).unwrap();
        let polys: Vec<_> = (0..=10).map(|n| j_poly(0.4, 0.0, s, n).unwrap()).collect();
        for (n, f) in polys.iter().enumerate() {
            for (m, g) in polys.iter().enumerate() {
                let ip = sobolev_ip_1d_poly(f, g, &p).unwrap();
                if n == m {
                    let expect = j_norm_square(&p, n).unwrap();
                    assert_abs_diff_eq!(ip, expect, epsilon = 1e-9 * expect.max(1.0));
                } else {
                    assert!(ip.abs() < 1e-9, "cross term {ip:.2e} at ({n},{m}), s = {s}");
                }
            }
        }
    }
}

/// Boundary-mass-only pairing of the low-degree members.
#[test]
fn low_degree_norms_are_pure_boundary_masses() {
    let p = SobolevParams1D::new(1.0, 0.5, 2, vec![3.0, 0.25]).unwrap();
    for n in 0..2usize {
        let f = j_poly(1.0, 0.5, 2, n).unwrap();
        let ip = sobolev_ip_1d_poly(&f, &f, &p).unwrap();
        assert_abs_diff_eq!(ip, p.mu[n], epsilon = 1e-12);
    }
}

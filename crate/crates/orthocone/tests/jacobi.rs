//! Oracle checks for the Jacobi module: the defining hypergeometric sum,
//! quadrature-based orthogonality, symmetry, and the derivative ladder.

use approx::assert_abs_diff_eq;
use orthocone::jacobi::{jacobi_constants, jacobi_derivative, jacobi_eval, JacobiParams};
use orthocone::quadrature::gauss_jacobi_sym;
use orthocone::special::{factorial, pochhammer};
use proptest::prelude::*;

/// The defining terminating series,
/// `P_n(t) = [(alpha+1)_n / n!] sum_k (-n)_k (n+alpha+beta+1)_k
///           / ((alpha+1)_k k!) ((1-t)/2)^k`,
/// summed directly. Independent of the recurrence.
fn hypergeometric_oracle(alpha: f64, beta: f64, n: usize, t: f64) -> f64 {
    let lead = pochhammer(alpha + 1.0, n) / factorial(n);
    let z = (1.0 - t) / 2.0;
    let mut total = 0.0;
    for k in 0..=n {
        let term = pochhammer(-(n as f64), k) * pochhammer(n as f64 + alpha + beta + 1.0, k)
            / (pochhammer(alpha + 1.0, k) * factorial(k))
            * z.powi(k as i32);
        total += term;
    }
    lead * total
}

#[test]
fn recurrence_matches_hypergeometric_sum() {
    let grid: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * i as f64).collect();
    for &(alpha, beta) in &[(0.0, 0.0), (1.0, 0.5), (-0.5, 2.0), (2.5, -0.9)] {
        let p = JacobiParams::new(alpha, beta).unwrap();
        for n in 0..=8 {
            for &t in &grid {
                let expect = hypergeometric_oracle(alpha, beta, n, t);
                let got = jacobi_eval(p, n, t).unwrap();
                // The alternating sum loses a couple of digits near t = -1,
                // so the shared tolerance sits slightly above 1e-11.
                assert_abs_diff_eq!(got, expect, epsilon = 5e-10 * (1.0 + expect.abs()));
            }
        }
    }
}

#[test]
fn quadrature_orthogonality_and_norms() {
    for &(alpha, beta) in &[(0.0, 0.0), (1.5, 0.5), (-0.5, 2.0)] {
        let p = JacobiParams::new(alpha, beta).unwrap();
        let rule = gauss_jacobi_sym(alpha, beta, 12).unwrap();
        let prefactor = jacobi_constants(p, 0).unwrap().c_ab / 2f64.powf(alpha + beta + 1.0);
        for n in 0..=10usize {
            for m in n..=10usize {
                let raw: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(&x, &w)| {
                        w * jacobi_eval(p, n, x).unwrap() * jacobi_eval(p, m, x).unwrap()
                    })
                    .sum();
                let normalized = prefactor * raw;
                if n == m {
                    let h = jacobi_constants(p, n).unwrap().h_n;
                    assert_abs_diff_eq!(normalized, h, epsilon = 1e-10 * h);
                } else {
                    assert!(
                        normalized.abs() < 1e-10,
                        "cross term {normalized:.2e} at ({n},{m}), alpha = {alpha}"
                    );
                }
            }
        }
    }
}

#[test]
fn derivative_ladder_matches_central_differences() {
    let p = JacobiParams::new(0.7, 1.2).unwrap();
    let h = 1e-5;
    for n in 1..=10usize {
        for i in 0..9 {
            let t = -0.8 + 0.2 * i as f64;
            let fd =
                (jacobi_eval(p, n, t + h).unwrap() - jacobi_eval(p, n, t - h).unwrap()) / (2.0 * h);
            let ladder = jacobi_derivative(p, n, 1, t).unwrap();
            assert_abs_diff_eq!(ladder, fd, epsilon = 1e-7 * (1.0 + ladder.abs()));
        }
    }
}

#[test]
fn endpoint_value_is_a_pochhammer_ratio() {
    for &(alpha, beta) in &[(0.0, 0.0), (1.5, 0.5), (-0.5, 2.0), (3.0, 3.0)] {
        let p = JacobiParams::new(alpha, beta).unwrap();
        for n in 0..=12usize {
            let expect = pochhammer(alpha + 1.0, n) / factorial(n);
            let got = jacobi_eval(p, n, 1.0).unwrap();
            assert_abs_diff_eq!(got, expect, epsilon = 1e-12 * expect.abs().max(1.0));
        }
    }
}

proptest! {
    /// `P_n^{(a,b)}(t) = (-1)^n P_n^{(b,a)}(-t)` across the parameter box.
    #[test]
    fn reflection_symmetry(
        alpha in -0.9f64..3.0,
        beta in -0.9f64..3.0,
        t in -1.0f64..1.0,
        n in 0usize..=12,
    ) {
        let p = JacobiParams::new(alpha, beta).unwrap();
        let q = JacobiParams::new(beta, alpha).unwrap();
        let lhs = jacobi_eval(p, n, t).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = sign * jacobi_eval(q, n, -t).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
    }

    /// Degree-0 evaluation is identically 1 whatever the parameters.
    #[test]
    fn degree_zero_is_constant_one(
        alpha in -0.9f64..4.0,
        beta in -0.9f64..4.0,
        t in -1.0f64..1.0,
    ) {
        let p = JacobiParams::new(alpha, beta).unwrap();
        prop_assert_eq!(jacobi_eval(p, 0, t).unwrap(), 1.0);
    }
}

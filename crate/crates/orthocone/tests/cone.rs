//! Structure of the conic bases: the two-branch decomposition of the
//! Sobolev family, rim vanishing orders, dimension counts, and small Gram
//! matrices under both inner products.

use approx::assert_abs_diff_eq;
use orthocone::cone::{
    basis_eval, basis_indices, basis_norm, cone_space_dim, sample_points, sobolev_basis_dt,
    sobolev_basis_eval, BasisIndex, ConeParams, ConePoint,
};
use orthocone::sphere::{harmonic_dim, sphere_quadrature, surface_area};

/// Below the smoothness order the Sobolev elements factor exactly as a rim
/// power times a solid harmonic.
#[test]
fn low_branch_is_rim_power_times_solid_harmonic() {
    for &d in &[2usize, 3] {
        for s in 1..=2usize {
            let p = ConeParams::sobolev(d, 0.0, s, vec![1.0; s]).unwrap();
            let panel = sample_points(d, 5, 4).unwrap();
            for n in 0..=6usize {
                for m in (n + 1).saturating_sub(s)..=n {
                    for ell in 1..=harmonic_dim(d, m) {
                        let idx = BasisIndex::new(d, n, m, ell).unwrap();
                        for pt in &panel {
                            let got = sobolev_basis_eval(&p, &idx, pt).unwrap();
                            let q = n - m;
                            let harmonic =
                                orthocone::sphere::harmonic_eval(d, m, ell, &pt.xi).unwrap();
                            let expect = (1.0 - pt.t).powi(q as i32) * 2f64.powi(q as i32)
                                / orthocone::special::factorial(q)
                                * pt.t.powi(m as i32)
                                * harmonic;
                            assert_abs_diff_eq!(got, expect, epsilon = 1e-12);
                        }
                    }
                }
            }
        }
    }
}

/// Above the smoothness order the elements carry a full `(1-t)^s` factor:
/// the value and the first `s-1` t-derivatives vanish on the rim, and the
/// ratio against the shifted ordinary element is constant.
#[test]
fn high_branch_vanishes_on_the_rim_and_factors() {
    for &d in &[2usize, 3] {
        for s in 1..=2usize {
            let p = ConeParams::sobolev(d, 0.0, s, vec![1.0; s]).unwrap();
            let shifted = ConeParams::ordinary(d, 0.0, s as f64).unwrap();
            let panel = sample_points(d, 5, 4).unwrap();
            for n in s..=6usize {
                for m in 0..=(n - s) {
                    for ell in 1..=harmonic_dim(d, m) {
                        let idx = BasisIndex::new(d, n, m, ell).unwrap();
                        // Rim vanishing of orders 0..s.
                        let rim = ConePoint::new(unit_dir(d), 1.0).unwrap();
                        for k in 0..s {
                            let v = sobolev_basis_dt(&p, &idx, &rim, k).unwrap();
                            assert!(
                                v.abs() < 1e-10,
                                "rim derivative {v:.2e} at k = {k}, {idx:?}"
                            );
                        }
                        // Constant ratio against (1-t)^s S^{n-s,(beta,s)}.
                        let inner = BasisIndex::new(d, n - s, m, ell).unwrap();
                        let mut ratio: Option<f64> = None;
                        for pt in &panel {
                            let top = sobolev_basis_eval(&p, &idx, pt).unwrap();
                            let bottom = (1.0 - pt.t).powi(s as i32)
                                * basis_eval(&shifted, &inner, pt).unwrap();
                            if bottom.abs() < 1e-9 {
                                continue;
                            }
                            let r = top / bottom;
                            if let Some(r0) = ratio {
                                assert_abs_diff_eq!(r, r0, epsilon = 1e-9 * r0.abs());
                            } else {
                                ratio = Some(r);
                            }
                        }
                        assert!(ratio.is_some(), "no usable panel point for {idx:?}");
                    }
                }
            }
        }
    }
}

/// The index family at each degree has the stated dimension.
#[test]
fn dimension_counts() {
    for &d in &[2usize, 3] {
        for n in 0..=12usize {
            assert_eq!(basis_indices(d, n).len(), cone_space_dim(d, n));
        }
    }
    assert_eq!(cone_space_dim(2, 3), 7);
    assert_eq!(cone_space_dim(3, 2), 9);
}

/// Ordinary Gram matrix smoke case: diagonal within 1e-10 and diagonal
/// entries equal to the closed-form norms.
#[test]
fn ordinary_gram_small_case() {
    let p = ConeParams::ordinary(2, 1.0, 0.5).unwrap();
    let (indices, gram) = orthocone::cone::gram_matrix(&p, 4).unwrap();
    check_gram(&p, &indices, &gram, 1e-10);
}

/// Sobolev Gram matrix smoke case.
#[test]
fn sobolev_gram_small_case() {
    let p = ConeParams::sobolev(3, 0.0, 1, vec![1.0]).unwrap();
    let (indices, gram) = orthocone::cone::gram_matrix(&p, 4).unwrap();
    check_gram(&p, &indices, &gram, 1e-9);
}

/// The quadrature-free norm formula matches an explicit quadrature sweep
/// of the rim integral for the boundary part of the Sobolev form.
#[test]
fn rim_integral_of_harmonics_is_orthonormal() {
    let d = 3;
    let rule = sphere_quadrature(d, 10).unwrap();
    for m in 0..=3usize {
        for ell in 1..=harmonic_dim(d, m) {
            let v = rule.integrate(|xi| {
                let y = orthocone::sphere::harmonic_eval(d, m, ell, xi).unwrap();
                y * y
            }) / surface_area(d);
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-11);
        }
    }
}

fn unit_dir(d: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..d).map(|i| (0.9 + 1.3 * i as f64).cos()).collect();
    let norm: f64 = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
    raw.iter().map(|c| c / norm).collect()
}

fn check_gram(p: &ConeParams, indices: &[BasisIndex], gram: &[Vec<f64>], tol: f64) {
    for (i, row) in gram.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            if i == j {
                let expect = basis_norm(p, indices[i].n, indices[i].m).unwrap();
                assert_abs_diff_eq!(entry, expect, epsilon = tol * expect.max(1e-30));
            } else {
                assert!(
                    entry.abs() < tol,
                    "cross term {entry:.2e} at ({:?}, {:?})",
                    indices[i],
                    indices[j]
                );
            }
        }
    }
}

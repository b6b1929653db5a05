use std::f64::consts::PI;

use kappa_core::liegroup::exp_diag;
use kappa_core::spherical::{
    deriv_spherical_sl2, legendre, spherical_compact_su2, spherical_sl2, spherical_sl2_direct, spherical_sl3,
    sl3_integrand, SpectralParameter,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn trivial_parameter_against_dense_direct_integral() {
    let v = spherical_sl2(&SpectralParameter::rank1(0.0, 0.0), 1.0).unwrap().value;
    let oracle = spherical_sl2_direct(Complex64::new(0.0, 0.0), 1.0, 1_000_000);
    assert!((v - oracle).norm() < 1e-10, "{v} vs {oracle}");
    assert!(v.im.abs() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn weyl_symmetric_in_spectral_parameter(xi in -20.0f64..20.0, eta in -0.9f64..0.9, y in 0.05f64..3.0) {
        let a = spherical_sl2(&SpectralParameter::rank1(xi, eta), y).unwrap().value;
        let b = spherical_sl2(&SpectralParameter::rank1(-xi, -eta), y).unwrap().value;
        prop_assert!((a - b).norm() < 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn real_parameter_bounded_by_one(xi in -50.0f64..50.0, y in 0.0f64..5.0) {
        let v = spherical_sl2(&SpectralParameter::rank1(xi, 0.0), y).unwrap().value;
        prop_assert!(v.norm() <= 1.0 + 1e-10);
        prop_assert!(v.im.abs() < 1e-10);
    }

    #[test]
    fn even_in_y(xi in -10.0f64..10.0, y in 0.0f64..4.0) {
        let lam = SpectralParameter::rank1(xi, 0.0);
        let a = spherical_sl2(&lam, y).unwrap().value;
        let b = spherical_sl2(&lam, -y).unwrap().value;
        prop_assert!((a - b).norm() < 1e-14);
    }
}

#[test]
fn imaginary_parameter_outside_region_grows() {
    let lam = SpectralParameter::rank1(0.0, 1.5);
    let at4 = spherical_sl2(&lam, 4.0).unwrap().value.norm();
    let at5 = spherical_sl2(&lam, 5.0).unwrap().value.norm();
    assert!(at4 > 5.0, "{at4}");
    assert!((at5 / at4 / 0.5f64.exp() - 1.0).abs() < 0.05, "{}", at5 / at4);
}

#[test]
fn first_derivative_matches_central_difference() {
    let h = 1e-5;
    for &(xi, y) in &[(0.0, 1.0), (1.0, 0.5), (3.0, 1.7), (12.0, 2.5)] {
        let lam = SpectralParameter::rank1(xi, 0.0);
        let d = deriv_spherical_sl2(&lam, 1.0, y, 1).unwrap().value;
        let f = |y: f64| spherical_sl2(&lam, y).unwrap().value;
        let fd = (f(y + h) - f(y - h)) / (2.0 * h);
        assert!((d - fd).norm() <= 1e-6 * d.norm().max(1e-3), "ξ={xi} Y={y}: {d} vs {fd}");
    }
}

#[test]
fn higher_derivatives_match_finite_differences() {
    let lam = SpectralParameter::rank1(2.0, 0.0);
    let y = 1.2;
    let h = 1e-4;
    let d1 = |y: f64| deriv_spherical_sl2(&lam, 1.0, y, 1).unwrap().value;
    let d2 = |y: f64| deriv_spherical_sl2(&lam, 1.0, y, 2).unwrap().value;
    let second = deriv_spherical_sl2(&lam, 1.0, y, 2).unwrap().value;
    let third = deriv_spherical_sl2(&lam, 1.0, y, 3).unwrap().value;
    assert!((second - (d1(y + h) - d1(y - h)) / (2.0 * h)).norm() < 1e-6);
    assert!((third - (d2(y + h) - d2(y - h)) / (2.0 * h)).norm() < 1e-6);
}

#[test]
fn trivial_parameter_decreasing_in_y() {
    let lam = SpectralParameter::rank1(0.0, 0.0);
    for k in 0..=30 {
        let y = 0.5 + 1.5 * k as f64 / 30.0;
        let d = deriv_spherical_sl2(&lam, 1.0, y, 1).unwrap().value;
        assert!(d.re < 0.0 && d.im.abs() < 1e-12, "Y={y}: {d}");
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let p = legendre(n as u64, x);
                let pm = legendre(n as u64 - 1, x);
                dp = n as f64 * (x * p - pm) / (x * x - 1.0);
                let step = p / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

fn rot_z(a: f64) -> DMatrix<f64> {
    let (s, c) = a.sin_cos();
    DMatrix::from_row_slice(3, 3, &[c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0])
}

fn rot_y(b: f64) -> DMatrix<f64> {
    let (s, c) = b.sin_cos();
    DMatrix::from_row_slice(3, 3, &[c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c])
}

/// Haar integral over SO(3) in z-y-z Euler angles.
fn sl3_product_quadrature(lambda: &[Complex64], a_log: [f64; 2], n: usize) -> Complex64 {
    let a = exp_diag(&[a_log[0], a_log[1], -a_log[0] - a_log[1]]);
    let gl = gauss_legendre(n);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..2 * n {
        let ra = rot_z(2.0 * PI * i as f64 / (2 * n) as f64);
        for &(x, w) in &gl {
            let rab = &ra * rot_y(x.acos());
            for j in 0..2 * n {
                let k = &rab * rot_z(2.0 * PI * j as f64 / (2 * n) as f64);
                acc += sl3_integrand(lambda, &a, &k) * w;
            }
        }
    }
    acc / (2.0 * (2 * n * 2 * n) as f64)
}

#[test]
fn sl3_monte_carlo_within_three_standard_errors() {
    let lam = SpectralParameter::real(vec![0.0, 0.0]);
    let oracle = sl3_product_quadrature(&lam.scaled(1.0), [1.0, 0.0], 48);
    let mc = spherical_sl3(&lam, [1.0, 0.0], 100_000, 42).unwrap();
    let dev = (mc.value - oracle).norm();
    assert!(dev <= 3.0 * mc.estimated_error, "{} vs {oracle}, se {}", mc.value, mc.estimated_error);
    assert!(mc.value.norm() <= 1.0 + 3.0 * mc.estimated_error);
}

#[test]
fn sl3_real_parameter_within_three_standard_errors() {
    let lam = SpectralParameter::real(vec![1.5, -0.5]);
    let oracle = sl3_product_quadrature(&lam.scaled(1.0), [0.6, 0.2], 48);
    let mc = spherical_sl3(&lam, [0.6, 0.2], 100_000, 7).unwrap();
    assert!((mc.value - oracle).norm() <= 3.0 * mc.estimated_error, "{} vs {oracle}", mc.value);
}

#[test]
fn compact_laplace_integral_matches_recurrence() {
    for n in 0..=100u64 {
        for j in 0..50 {
            let theta = PI * (j as f64 + 0.5) / 50.0;
            let v = spherical_compact_su2(n, theta).unwrap();
            assert!((v - legendre(n, theta.cos())).abs() < 1e-9, "n={n} θ={theta}");
        }
    }
}

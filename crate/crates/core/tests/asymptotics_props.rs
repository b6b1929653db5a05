use kappa_core::asymptotics::{
    decay_fit, dyadic_sup_quotient, exp_sum_separation, holder_estimate, leading_term_su2, stationary_points_check_sl2,
    Verdict, DEFAULT_GROWTH_THRESHOLD,
};
use kappa_core::spherical::legendre;
use num_complex::Complex64;
use proptest::prelude::*;

fn uniform(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

#[test]
fn holder_dichotomy_on_scaled_cosines() {
    let grid = uniform(0.0, 1.0, 8193);
    let family: Vec<(f64, Vec<Complex64>)> = (4..=11)
        .map(|k| {
            let t = 2f64.powi(k);
            (t, grid.iter().map(|&x| Complex64::new((t * x).cos() / t.sqrt(), 0.0)).collect())
        })
        .collect();
    let half = holder_estimate(&grid, &family, 0, 0.5, (0.0, 1.0), DEFAULT_GROWTH_THRESHOLD).unwrap();
    assert_eq!(half.verdict, Verdict::Bounded, "{:?}", half.sup_quotients);
    let more = holder_estimate(&grid, &family, 0, 0.7, (0.0, 1.0), DEFAULT_GROWTH_THRESHOLD).unwrap();
    assert_eq!(more.verdict, Verdict::Growing, "{:?}", more.sup_quotients);
}

#[test]
fn square_root_has_unit_half_quotient() {
    let grid = uniform(0.0, 1.0, 10_000);
    let values: Vec<Complex64> = grid.iter().map(|&x| Complex64::new(x.sqrt(), 0.0)).collect();
    let q = dyadic_sup_quotient(&values, grid[1], 0.5);
    assert!((0.95..=1.0 + 1e-12).contains(&q), "{q}");
}

#[test]
fn decay_fit_recovers_power_law() {
    let samples: Vec<(f64, f64)> = (0..12).map(|k| {
        let t = 10.0 * 1.5f64.powi(k);
        (t, 3.0 * t.powf(-0.75))
    }).collect();
    let fit = decay_fit(&samples).unwrap();
    assert!((fit.slope + 0.75).abs() < 1e-12);
    assert!((fit.r_squared - 1.0).abs() < 1e-12);
    assert!(decay_fit(&samples[..5]).is_err());
}

#[test]
fn leading_term_tracks_legendre() {
    for &theta in &[0.4, 1.0, 2.0] {
        let n = 4000;
        let lead = leading_term_su2(n, theta).unwrap().total;
        assert!(lead.im.abs() < 1e-12);
        assert!((legendre(n, theta.cos()) - lead.re).abs() < 1e-5, "θ={theta}");
    }
}

#[test]
fn sl2_stationary_points_are_weyl_points() {
    let pts = stationary_points_check_sl2(1.0, 1.0, 1e-10, 4096).unwrap();
    let expected = [0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI, 3.0 * std::f64::consts::FRAC_PI_2];
    assert_eq!(pts.len(), 4, "{pts:?}");
    for (p, e) in pts.iter().zip(expected) {
        assert!((p - e).abs() < 1e-8, "{pts:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cesaro_mean_nonnegative(
        terms in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0, -3.0f64..3.0, -3.0f64..3.0), 1..5),
        m in -50i64..50,
        n in 1usize..200,
    ) {
        let fx: Vec<Complex64> = terms.iter().map(|t| Complex64::new(t.0, t.1)).collect();
        let fy: Vec<Complex64> = terms.iter().map(|t| Complex64::new(t.1, -t.0)).collect();
        let ux: Vec<f64> = terms.iter().map(|t| t.2).collect();
        let uy: Vec<f64> = terms.iter().map(|t| t.3).collect();
        prop_assert!(exp_sum_separation(&fx, &fy, &ux, &uy, m, n).unwrap() >= 0.0);
        prop_assert!(exp_sum_separation(&fx, &fx, &ux, &ux, m, n).unwrap() < 1e-20);
    }
}

use kappa_core::liegroup::{exp_diag, iwasawa, kak, random_sl, sl2_iwasawa_h1, HaarSampler, SpecialLinearElement, rotation2};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iwasawa_projection_left_k_invariant(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_sl(n, &mut rng);
        let k = HaarSampler::new(n, seed ^ 0xa5a5).sample();
        let kg = SpecialLinearElement::new(k * g.matrix()).unwrap();
        let d = (iwasawa(&kg).unwrap().h - iwasawa(&g).unwrap().h).amax();
        prop_assert!(d < 1e-9, "{}", d);
    }

    #[test]
    fn cartan_projection_bi_invariant(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_sl(n, &mut rng);
        let mut haar = HaarSampler::new(n, seed.wrapping_add(7));
        let (k1, k2) = (haar.sample(), haar.sample());
        let moved = SpecialLinearElement::new(k1 * g.matrix() * k2).unwrap();
        let d = (kak(&moved).unwrap().a_log - kak(&g).unwrap().a_log).amax();
        prop_assert!(d < 1e-9, "{}", d);
    }

    #[test]
    fn iwasawa_of_diagonal_is_its_log(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let h = [a, b, -a - b];
        let g = SpecialLinearElement::new(exp_diag(&h)).unwrap();
        let f = iwasawa(&g).unwrap();
        for i in 0..3 {
            prop_assert!((f.h[i] - h[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn sl2_closed_form_matches_decomposition(y in -3.0f64..3.0, theta in 0.0f64..6.3) {
        let g = SpecialLinearElement::new(exp_diag(&[y, -y]) * rotation2(theta)).unwrap();
        let h = iwasawa(&g).unwrap().h;
        prop_assert!((h[0] - sl2_iwasawa_h1(y, theta)).abs() < 1e-10);
    }
}

#[test]
fn iwasawa_projection_is_smooth_along_rotations() {
    // second differences along a one-parameter subgroup scale like step²
    let y = 1.3;
    let f = |t: f64| sl2_iwasawa_h1(y, t);
    let (t0, h1, h2) = (0.7, 1e-2, 5e-3);
    let d1 = (f(t0 + h1) - 2.0 * f(t0) + f(t0 - h1)).abs();
    let d2 = (f(t0 + h2) - 2.0 * f(t0) + f(t0 - h2)).abs();
    assert!((d1 / d2 - 4.0).abs() < 0.01, "{}", d1 / d2);
}

#[test]
fn haar_samples_are_special_orthogonal() {
    for k in HaarSampler::new(4, 3).take(200) {
        assert!((k.determinant() - 1.0).abs() < 1e-12);
        let e = &k.transpose() * &k - nalgebra::DMatrix::<f64>::identity(4, 4);
        assert!(e.amax() < 1e-12);
    }
}

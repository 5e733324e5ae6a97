mod common;

use common::*;
use proptest::prelude::*;
use slopestab::exactalg::rat::rat;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn futaki_equals_weight_combination((h, c) in model_and_c()) {
        futaki_bridge(&h, &c)?;
    }

    #[test]
    fn slope_inequalities_agree((h, c) in model_and_c()) {
        slope_equivalences(&h, &c)?;
    }

    #[test]
    fn mu_is_the_mediant((h, c) in model_and_c()) {
        mediant(&h, &c)?;
    }

    #[test]
    fn verdict_survives_powers_of_l((h, c) in model_and_c(), r in prop::sample::select(vec![2u32, 3, 5])) {
        scale_invariance(&h, &c, r)?;
    }

    #[test]
    fn euler_maclaurin_is_the_literal_sum(f in small_poly(8), p in 0i64..=6, q in 1i64..=4, s in 1u64..=4) {
        euler_maclaurin(&f, &rat(p, q), q as u64 * s)?;
    }

    #[test]
    fn thickening_rescales_the_weight((h, c) in model_and_c(), m in 1u32..=4) {
        let c = c / slopestab::exactalg::rat::int(m as i64);
        thickening(&h, m, &c)?;
    }

    #[test]
    fn basechange_is_linear(d in 1i64..=8, g in 0i64..=3, m in 1u64..=5, seed in layers(8)) {
        let ls: Vec<u64> = seed.into_iter().map(|p| p.min(d as u64)).collect();
        basechange_linearity(&ls, g, d, m)?;
    }

    #[test]
    fn sign_analysis_matches_sampling(
        p in rooted_poly(),
        a in -12i64..=12,
        b in 1i64..=4,
        w in 1i64..=16,
        closed in any::<bool>(),
    ) {
        let lo = rat(a, b);
        let hi = &lo + rat(w, 2);
        sign_vs_sampling(&p, &lo, &hi, closed)?;
    }

    #[test]
    fn point_criterion_decides_smooth_points((n, ln, kl, eps, sat) in point_params()) {
        point_criterion(n, ln, kl, &eps, sat)?;
    }

    #[test]
    fn combining_points_commutes((h1, h2) in two_points(), confirm in any::<bool>()) {
        combine_commutes(&h1, &h2, confirm)?;
    }

    #[test]
    fn margin_is_safe_near_zero(h in any_model()) {
        small_c_safety(&h)?;
    }
}

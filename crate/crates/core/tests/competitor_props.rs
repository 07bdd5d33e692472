use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use cone_min_lab::competitors::{sec5_bound_log, DEFAULT_BUDGET};
use cone_min_lab::{
    catenoid_area_closed_form, competitor_search, disk_profile, graph_area, sec5_area_numeric,
    sec5_bound, solve_catenoid, threshold, ConeSpace, LengthProfile, QuadratureConfig,
    Sec5Competitor,
};
use proptest::prelude::*;

fn cos_squared_length(l0: f64) -> LengthProfile {
    let ts: Vec<f64> = (0..=200).map(|k| FRAC_PI_2 * k as f64 / 200.0).collect();
    let ls: Vec<f64> = ts.iter().map(|t| l0 * t.cos().powi(2)).collect();
    LengthProfile::tabulated(ts, ls).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn catenoid_solves_its_boundary_system(delta in 1e-4f64..FRAC_PI_4, alpha in 0.01f64..0.99) {
        let p = solve_catenoid(delta, alpha).unwrap();
        let (r1, r2) = p.residuals();
        prop_assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12, "{r1} {r2}");
        prop_assert!(p.a > 0.0 && p.a < alpha * delta.cos());
    }

    #[test]
    fn catenoid_profile_meets_both_circles(delta in 1e-3f64..0.7, alpha in 0.05f64..0.95) {
        let f = solve_catenoid(delta, alpha).unwrap().profile().unwrap();
        prop_assert!((f.value(0.0) - 1.0).abs() <= 1e-12);
        prop_assert!((f.value(delta) - alpha).abs() <= 1e-12);
    }

    #[test]
    fn disk_starts_at_the_junction_circle(delta in 1e-3f64..0.7, alpha in 0.05f64..0.95) {
        let cfg = QuadratureConfig::default();
        let d = disk_profile(delta, alpha, &LengthProfile::round_sphere(2.0 * PI).unwrap(), &cfg).unwrap();
        prop_assert!((d.profile.value(delta) - alpha).abs() <= 1e-12);
        prop_assert!(d.area <= d.bound + 1e-10);
    }

    #[test]
    fn sec5_profile_is_continuous_at_junction(n in 2u32..7, lambda in 0.3f64..=1.0, delta in 1e-3f64..0.3, alpha in 0.05f64..0.9) {
        let cfg = QuadratureConfig::default();
        let comp = Sec5Competitor::new(ConeSpace::new(n, lambda).unwrap(), delta, alpha).unwrap();
        let f = comp.profile(&cfg).unwrap();
        let left = alpha * (-comp.mu * (delta - delta)).exp();
        prop_assert!((f.value(delta) - left).abs() <= 1e-12);
    }

    #[test]
    fn sec5_bound_dominates_quadrature(n in 2u32..7, lambda in 0.3f64..=1.0, delta in 1e-4f64..0.3, alpha in 0.01f64..0.9) {
        let cfg = QuadratureConfig::default();
        let space = ConeSpace::new(n, lambda).unwrap();
        let numeric = sec5_area_numeric(&space, delta, alpha, &cfg).unwrap();
        prop_assert!(numeric <= sec5_bound(&space, delta, alpha) + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn closed_form_areas_match_quadrature(delta in 0.01f64..0.5, alpha in 0.1f64..0.9) {
        let cfg = QuadratureConfig::default();
        let l0 = 2.0 * PI;
        let l = LengthProfile::round_sphere(l0).unwrap();
        let p = solve_catenoid(delta, alpha).unwrap();
        let closed = catenoid_area_closed_form(&p, l0).unwrap();
        let quad = graph_area(&p.profile().unwrap(), &l, &cfg).unwrap().value;
        prop_assert!((quad / closed - 1.0).abs() <= 1e-8, "{quad} vs {closed}");
        let d = disk_profile(delta, alpha, &l, &cfg).unwrap();
        let quad = graph_area(&d.profile, &l, &cfg).unwrap().value;
        prop_assert!((quad - d.area).abs() <= 1e-7, "{quad} vs {}", d.area);
    }
}

#[test]
fn deficit_slopes_approach_their_limits() {
    let cfg = QuadratureConfig::default();
    let (delta, alpha): (f64, f64) = (1e-3, 0.5);
    let l0 = 2.0 * PI;
    let l = LengthProfile::round_sphere(l0).unwrap();

    // catenoid: area·2/L0 = 1 - α^2 + α^2 (1 + 1/(-ln α)) δ^2 + o(δ^2), from quadrature
    let p = solve_catenoid(delta, alpha).unwrap();
    let quad = graph_area(&p.profile().unwrap(), &l, &cfg).unwrap().value;
    let fitted = (quad * 2.0 / l0 - (1.0 - alpha * alpha)) / (delta * delta);
    let limit = alpha * alpha * (1.0 + 1.0 / -alpha.ln());
    assert!(
        (fitted / limit - 1.0).abs() <= 0.02,
        "catenoid {fitted} vs {limit}"
    );

    // disk on the round sphere: α^2 - area·2/L0 = α^2 (L0/F)^2 δ^2 + o(δ^2), F = L0
    let d = disk_profile(delta, alpha, &l, &cfg).unwrap();
    let fitted = (alpha * alpha - d.area * 2.0 / l0) / (delta * delta);
    assert!(
        (fitted / (alpha * alpha) - 1.0).abs() <= 0.02,
        "disk {fitted}"
    );

    // L = 3 cos^2 t has F = 3π/4, so (L0/F)^2 = 16/π^2; the area only obeys the bound
    let l = cos_squared_length(3.0);
    let d = disk_profile(delta, alpha, &l, &cfg).unwrap();
    assert!((d.deficit_coefficient - 16.0 / (PI * PI)).abs() <= 1e-6);
    let fitted = (alpha * alpha - d.area * 2.0 / 3.0) / (delta * delta);
    assert!(
        fitted >= alpha * alpha * d.deficit_coefficient * 0.98,
        "tabulated disk {fitted}"
    );
}

#[test]
fn search_verdicts_switch_once_in_lambda() {
    for n in 2..=6u32 {
        let verdicts: Vec<bool> = (0..50)
            .map(|k| {
                let lambda = 0.5 + 0.5 * f64::from(k) / 49.0;
                competitor_search(&ConeSpace::new(n, lambda).unwrap(), DEFAULT_BUDGET).found
            })
            .collect();
        let switches = verdicts.windows(2).filter(|w| w[0] != w[1]).count();
        assert!(
            switches <= 1 && (switches == 0 || verdicts[0]),
            "n={n}: {verdicts:?}"
        );
        if n >= 3 {
            let star = threshold(n).unwrap();
            let last_found = verdicts
                .iter()
                .rposition(|&b| b)
                .map(|k| 0.5 + 0.5 * k as f64 / 49.0);
            assert!(last_found.is_none_or(|l| l < star), "n={n}");
        }
    }
}

#[test]
fn bound_grid_respects_threshold_for_three_dimensions() {
    let grid = |lo: f64, hi: f64, k: usize, m: usize| {
        (lo.ln() + (hi / lo).ln() * k as f64 / (m - 1) as f64).exp()
    };
    let above = ConeSpace::new(3, 0.95).unwrap();
    let below = ConeSpace::new(3, 0.9).unwrap();
    let mut beaten = false;
    for i in 0..40 {
        for j in 0..60 {
            let (alpha, neg_ln_delta) = (grid(1e-4, 0.9, i, 40), grid(1.2, 1e8, j, 60));
            assert!(
                !sec5_bound_log(&above, neg_ln_delta, alpha)
                    .unwrap()
                    .beats_cone(),
                "α={alpha} -ln δ={neg_ln_delta}"
            );
            beaten |= sec5_bound_log(&below, neg_ln_delta, alpha)
                .unwrap()
                .beats_cone();
        }
    }
    assert!(beaten);
}

#[test]
fn three_dimensional_competitor_needs_tiny_junctions() {
    // at λ = 0.9 the bound only dips below 1/3 for δ < 1e-8, out of reach of doubles
    let grid = |lo: f64, hi: f64, k: usize| (lo.ln() + (hi / lo).ln() * k as f64 / 39.0).exp();
    let below = ConeSpace::new(3, 0.9).unwrap();
    for i in 0..40 {
        for j in 0..40 {
            let (alpha, delta) = (grid(1e-4, 0.9, i), grid(1e-6, 0.3, j));
            assert!(sec5_bound(&below, delta, alpha) >= 1.0 / 3.0);
            assert!(!sec5_bound_log(&below, -delta.ln(), alpha)
                .unwrap()
                .beats_cone());
        }
    }
}

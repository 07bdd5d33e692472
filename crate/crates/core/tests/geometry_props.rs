use cone_min_lab::{
    cone_ricci, cone_sectional, density_ratio, ConeSpace, Direction, Plane, QuadratureConfig,
    Surface,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn flat_cone_has_no_curvature(n in 2u32..12, t in 1e-6f64..1e6) {
        let space = ConeSpace::new(n, 1.0).unwrap();
        prop_assert_eq!(cone_sectional(&space, t, Plane::Tangential).unwrap(), 0.0);
        prop_assert_eq!(cone_sectional(&space, t, Plane::Radial).unwrap(), 0.0);
        prop_assert_eq!(cone_ricci(&space, t, Direction::Tangential).unwrap(), 0.0);
        prop_assert_eq!(cone_ricci(&space, t, Direction::Radial).unwrap(), 0.0);
    }

    #[test]
    fn curvatures_scale_like_inverse_square(n in 2u32..12, lambda in 0.01f64..1.0, t in 1e-4f64..1e4) {
        let space = ConeSpace::new(n, lambda).unwrap();
        let k1 = cone_sectional(&space, 1.0, Plane::Tangential).unwrap();
        let kt = cone_sectional(&space, t, Plane::Tangential).unwrap() * t * t;
        prop_assert!((kt / k1 - 1.0).abs() <= 1e-12);
        let r1 = cone_ricci(&space, 1.0, Direction::Tangential).unwrap();
        let rt = cone_ricci(&space, t, Direction::Tangential).unwrap() * t * t;
        prop_assert!((rt / r1 - 1.0).abs() <= 1e-12);
        // tangential curvature (1/λ^2 - 1)/t^2, an independent evaluation
        let direct = (1.0 / (lambda * lambda) - 1.0) / (t * t);
        let value = cone_sectional(&space, t, Plane::Tangential).unwrap();
        prop_assert!((value - direct).abs() <= 1e-12 * direct.abs().max(1e-300) + 1e-15 / (t * t));
    }

    #[test]
    fn cone_density_is_constant(n in 2u32..8, lambda in 0.1f64..=1.0, r in 1e-3f64..1e3) {
        let cfg = QuadratureConfig::default();
        let space = ConeSpace::new(n, lambda).unwrap();
        let s = Surface::EquatorialCone { space };
        let base = density_ratio(&s, r, &cfg).unwrap();
        let wide = density_ratio(&s, 10.0 * r, &cfg).unwrap();
        prop_assert!((wide / base - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn catenoid_density_is_nondecreasing(neck in 0.05f64..2.0, r in 1.0f64..50.0, step in 1.01f64..3.0) {
        let cfg = QuadratureConfig::default();
        let s = Surface::EuclideanCatenoid { neck };
        let a = density_ratio(&s, neck * r, &cfg).unwrap();
        let b = density_ratio(&s, neck * r * step, &cfg).unwrap();
        prop_assert!(b >= a - 1e-9);
    }
}

#[test]
fn vertex_is_excluded() {
    let space = ConeSpace::new(3, 0.5).unwrap();
    assert!(cone_sectional(&space, 0.0, Plane::Tangential).is_err());
    assert!(cone_ricci(&space, -1.0, Direction::Radial).is_err());
}

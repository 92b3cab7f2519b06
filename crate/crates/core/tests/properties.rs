use convex_normals::averaging::{estimate_interior_average, Body, Counter};
use convex_normals::bodyspec::BodySpec;
use convex_normals::discretization::inscribe_polygon;
use convex_normals::evolute::{contains_evolute, random_evolute_body};
use convex_normals::flows::{offset_body, steiner_residual};
use convex_normals::normals::{normal_feet2, EquilibriumIndex};
use convex_normals::wedges::exact_average_normals;
use convex_normals::{Body2, Point2, SmoothBody2};
use proptest::prelude::*;
use std::f64::consts::TAU;

/// `1 + Σ_{k=2}^{4}` harmonics small enough that `ρ ≥ 0.48`.
fn smooth_body() -> impl Strategy<Value = SmoothBody2> {
    (prop::collection::vec(-0.01..0.01f64, 3), prop::collection::vec(-0.01..0.01f64, 3)).prop_map(|(c, s)| {
        let cos = [0.0].into_iter().chain(c).collect::<Vec<_>>();
        let sin = [0.0].into_iter().chain(s).collect::<Vec<_>>();
        SmoothBody2::from_coeffs(1.0, &cos, &sin).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn feet_pair_up(body in smooth_body(), seed in 0u64..1000, index in 0u64..1000) {
        let planar = Body2::Smooth(body.clone());
        let p = planar.sample_interior_at(seed, index);
        let feet = normal_feet2(&planar, p).unwrap();
        let stable = feet.iter().filter(|f| f.index == EquilibriumIndex::Stable).count();
        let unstable = feet.iter().filter(|f| f.index == EquilibriumIndex::Unstable).count();
        prop_assert!(feet.len() >= 2 && feet.len() % 2 == 0);
        prop_assert_eq!(stable, unstable);
        for f in &feet {
            prop_assert!(body.support_excess(f.foot).abs() < 1e-9);
        }
    }

    #[test]
    fn counts_follow_translation(body in smooth_body(), seed in 0u64..1000, dx in -3.0..3.0f64, dy in -3.0..3.0f64) {
        let planar = Body2::Smooth(body.clone());
        let p = planar.sample_interior_at(seed, 0);
        let v = Point2::new(dx, dy);
        let moved = Body2::Smooth(body.translated(v));
        prop_assert_eq!(normal_feet2(&planar, p).unwrap().len(), normal_feet2(&moved, p + v).unwrap().len());
    }

    #[test]
    fn offsets_commute_with_scaling(body in smooth_body(), t in 0.0..2.0f64, scale in 0.2..5.0f64) {
        let a = offset_body(&body.scaled(scale), scale * t).unwrap();
        let b = offset_body(&body, t).unwrap().scaled(scale);
        for j in 0..32 {
            let theta = TAU * j as f64 / 32.0;
            prop_assert!((a.support(theta) - b.support(theta)).abs() < 1e-12 * scale.max(1.0) * (1.0 + t));
        }
        prop_assert!(steiner_residual(&body, t).unwrap() < 1e-10);
    }

    #[test]
    fn specs_round_trip(body in smooth_body()) {
        let h = body.support_poly();
        let spec = BodySpec::Support2d { a0: h.a0(), cos: h.cos_coeffs().to_vec(), sin: h.sin_coeffs().to_vec() };
        let back = BodySpec::from_json(&spec.to_json()).unwrap();
        prop_assert_eq!(&back, &spec);
        let rebuilt = back.build_smooth().unwrap();
        for j in 0..16 {
            let theta = TAU * j as f64 / 16.0;
            prop_assert!((rebuilt.support(theta) - body.support(theta)).abs() < 1e-15);
        }
    }

    #[test]
    fn inscribed_polygons_sit_inside(body in smooth_body(), k in 3usize..40) {
        let poly = inscribe_polygon(&body, k).unwrap();
        prop_assert!(poly.area() < body.area());
        prop_assert!(exact_average_normals(&poly).mean > 4.0);
    }

    #[test]
    fn outward_offsets_keep_the_evolute_inside(seed in 0u64..200, degree in 2usize..6, t in 0.0..3.0f64) {
        let body = random_evolute_body(seed, degree).unwrap();
        let grown = offset_body(&body, t).unwrap();
        prop_assert!(contains_evolute(&grown).contained);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn estimates_repeat_exactly(body in smooth_body(), seed in any::<u64>()) {
        let planar = Body::Planar(Body2::Smooth(body));
        let a = estimate_interior_average(&planar, &Counter::Normals, 500, seed).unwrap();
        let b = estimate_interior_average(&planar, &Counter::Normals, 500, seed).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.mean >= 2.0 && a.mean <= 6.0);
    }
}

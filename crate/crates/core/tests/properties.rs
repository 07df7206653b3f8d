use std::f64::consts::TAU;

use proptest::prelude::*;

use flatgap::enumeration::{direction_set, enumerate_saddle_connections, EnumerationLimits, HolonomySet};
use flatgap::gaps::{gap_report, theta_level_measure};
use flatgap::geometry::exact::VectorKey;
use flatgap::geometry::{build_regular_octagon, build_square_torus, PlanarVector, Sl2Matrix, TranslationSurface};

fn sorted_keys(s: &HolonomySet) -> Vec<VectorKey> {
    let mut k: Vec<VectorKey> = s.keys().into_iter().collect();
    k.sort();
    k
}

fn surface(octagon: bool) -> TranslationSurface {
    if octagon {
        build_regular_octagon()
    } else {
        build_square_torus()
    }
}

/// Integer matrices of determinant one with small entries.
fn sl2z() -> impl Strategy<Value = Sl2Matrix> {
    (-3i64..=3, -3i64..=3, prop::bool::ANY).prop_filter_map("needs an inverse", |(a, b, swap)| {
        // [[1, a], [0, 1]] · [[1, 0], [b, 1]], optionally with the rotation by π/2
        let m = Sl2Matrix::new(1.0, a as f64, 0.0, 1.0).ok()?.compose(&Sl2Matrix::new(1.0, 0.0, b as f64, 1.0).ok()?);
        Some(if swap { Sl2Matrix::new(0.0, -1.0, 1.0, 0.0).ok()?.compose(&m) } else { m })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integer_matrices_commute_with_enumeration(m in sl2z(), octagon in prop::bool::ANY, r in 2.0f64..6.0) {
        let s = surface(octagon);
        let direct = enumerate_saddle_connections(&s.apply_matrix(&m), r, &EnumerationLimits::default()).unwrap();
        let reach = r * m.inverse().operator_norm() + 1e-9;
        let moved = enumerate_saddle_connections(&s, reach, &EnumerationLimits::default()).unwrap().transform(&m).restrict(r);
        prop_assert_eq!(sorted_keys(&direct), sorted_keys(&moved));
        prop_assert_eq!(direct.len(), moved.len());
    }

    #[test]
    fn rotation_rotates_the_set(theta in 0.0f64..TAU, octagon in prop::bool::ANY) {
        let s = surface(octagon);
        let rot = Sl2Matrix::r_theta(theta);
        let a = enumerate_saddle_connections(&s.apply_matrix(&rot), 5.0, &EnumerationLimits::default()).unwrap();
        let b = enumerate_saddle_connections(&s, 5.0, &EnumerationLimits::default()).unwrap();
        prop_assert_eq!(a.len(), b.len());
        let moved: Vec<PlanarVector> = b.entries().iter().map(|e| rot.apply(e.vector)).collect();
        for e in a.entries() {
            prop_assert!(moved.iter().any(|w| (w.x - e.vector.x).abs() < 1e-9 && (w.y - e.vector.y).abs() < 1e-9));
        }
    }

    #[test]
    fn area_is_invariant(m in sl2z(), octagon in prop::bool::ANY) {
        let s = surface(octagon);
        prop_assert!((s.apply_matrix(&m).area() - s.area()).abs() < 1e-9 * s.area());
        let back = s.apply_matrix(&m).apply_matrix(&m.inverse());
        for (p, q) in back.polygons().iter().flatten().zip(s.polygons().iter().flatten()) {
            prop_assert!((p.x - q.x).abs() < 1e-9 && (p.y - q.y).abs() < 1e-9);
        }
    }

    #[test]
    fn counts_are_monotone_in_radius(r1 in 1.0f64..8.0, dr in 0.0f64..4.0, octagon in prop::bool::ANY) {
        let s = surface(octagon);
        let small = enumerate_saddle_connections(&s, r1, &EnumerationLimits::default()).unwrap();
        let large = enumerate_saddle_connections(&s, r1 + dr, &EnumerationLimits::default()).unwrap();
        prop_assert!(small.len() <= large.len());
        prop_assert_eq!(sorted_keys(&large.restrict(r1)), sorted_keys(&small));
        prop_assert_eq!(large.restrict(r1).len(), small.len());
    }

    #[test]
    fn orientations_come_in_pairs(r in 1.0f64..10.0, octagon in prop::bool::ANY) {
        let set = enumerate_saddle_connections(&surface(octagon), r, &EnumerationLimits::default()).unwrap();
        let keys = set.keys();
        for e in set.entries() {
            let neg = match e.exact {
                Some(x) => VectorKey::Exact(x.neg()),
                None => HolonomySet::from_vectors([-e.vector], r).entries()[0].key(),
            };
            prop_assert!(keys.contains(&neg));
        }
    }

    #[test]
    fn sweep_identities_hold(
        pts in prop::collection::vec((0.0f64..1.0, 0.0f64..TAU), 1..400),
        r in 1.0f64..50.0,
        sigma in 0.001f64..5.0,
        c in 0.0f64..0.99,
    ) {
        let vectors: Vec<PlanarVector> = pts.iter().map(|&(u, phi)| PlanarVector::from_polar(r * u.sqrt(), phi)).collect();
        let set = HolonomySet::from_vectors(vectors, r);
        let qualifying = set.distinct_vectors().iter().filter(|v| v.norm() >= c * r && v.norm() <= r && v.norm() > 0.0).count();
        let lm = theta_level_measure(&set, r, sigma, c);
        prop_assert!((lm.total() - TAU).abs() <= 1e-12 * TAU);
        let want = 2.0 * sigma / (r * r) * qualifying as f64;
        prop_assert!((lm.first_moment() - want).abs() <= 1e-12 * want.max(1e-300));
        prop_assert!(lm.measure.iter().all(|&m| m >= 0.0));
    }

    #[test]
    fn smallest_gap_is_at_most_the_average(r in 2.0f64..30.0, octagon in prop::bool::ANY) {
        let set = enumerate_saddle_connections(&surface(octagon), r, &EnumerationLimits::default()).unwrap();
        let d = direction_set(&set);
        let g = gap_report(&d, r).unwrap();
        prop_assert!(g.gamma > 0.0);
        prop_assert!(g.gamma <= TAU / d.distinct_count() as f64 + 1e-12);
        prop_assert!((g.scaled_gamma - r * r * g.gamma).abs() <= 1e-12 * g.scaled_gamma);
    }
}

mod common;

use std::collections::BTreeMap;

use flatgap::enumeration::{enumerate_cylinders, enumerate_cylinders_searching, EnumerationLimits};
use flatgap::geometry::{build_regular_octagon, build_square_torus};

#[test]
fn torus_cylinders_are_the_primitive_vectors() {
    let r = 10.0;
    let set = enumerate_cylinders(&build_square_torus(), r, &EnumerationLimits::default()).unwrap();
    let want = common::gcd_grid(r);
    assert_eq!(set.len(), want.len());
    for c in &set.cylinders {
        let key = (c.core_holonomy.x.round() as i64, c.core_holonomy.y.round() as i64);
        assert!(want.contains(&key), "{key:?}");
        assert!((c.area - 1.0).abs() < 1e-9);
        assert!((c.width * c.length() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn octagon_moduli_are_commensurable() {
    let s = build_regular_octagon();
    let set = enumerate_cylinders_searching(&s, 12.0, 60.0, &EnumerationLimits::default()).unwrap();
    assert_eq!(set.undecomposed, 0);
    let mut by_dir: BTreeMap<i64, Vec<(f64, f64)>> = BTreeMap::new();
    for c in &set.cylinders {
        by_dir.entry((c.direction * 1e9).round() as i64).or_default().push((c.area, c.length() / c.width));
    }
    assert!(by_dir.len() >= 16);
    for (dir, cyls) in &by_dir {
        let total: f64 = cyls.iter().map(|c| c.0).sum();
        // cylinders longer than R are not listed, so a direction can be
        // short of the full area only when some core exceeds R
        assert!(total <= s.area() * (1.0 + 1e-9), "direction {dir}");
        // the two cylinder types of the octagon have moduli in ratio 2
        let m0 = cyls.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
        for &(_, m) in cyls {
            let q = m / m0;
            assert!((q - 1.0).abs() < 1e-9 || (q - 2.0).abs() < 1e-9, "direction {dir}: {m} vs {m0}");
        }
    }
}

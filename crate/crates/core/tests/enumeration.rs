mod common;

use std::collections::BTreeSet;

use flatgap::enumeration::{direction_set, enumerate_saddle_connections, EnumerationLimits};
use flatgap::geometry::{build_regular_octagon, build_square_torus};

fn integer_set(s: &flatgap::enumeration::HolonomySet) -> BTreeSet<(i64, i64)> {
    s.entries().iter().map(|e| (e.vector.x.round() as i64, e.vector.y.round() as i64)).collect()
}

#[test]
fn torus_matches_gcd_grid() {
    let t = build_square_torus();
    for r in [1.0, 2.5, 5.0, 10.0] {
        let set = enumerate_saddle_connections(&t, r, &EnumerationLimits::default()).unwrap();
        assert_eq!(set.len(), common::gcd_grid(r).len(), "R = {r}");
        assert_eq!(integer_set(&set), common::gcd_grid(r));
    }
}

#[test]
fn below_shortest_connection_is_empty() {
    let set = enumerate_saddle_connections(&build_square_torus(), 0.99, &EnumerationLimits::default()).unwrap();
    assert!(set.is_empty());
    let oct = enumerate_saddle_connections(&build_regular_octagon(), 0.99, &EnumerationLimits::default()).unwrap();
    assert!(oct.is_empty());
}

#[test]
fn torus_directions_are_distinct() {
    let set = enumerate_saddle_connections(&build_square_torus(), 5.0, &EnumerationLimits::default()).unwrap();
    let d = direction_set(&set);
    assert_eq!(d.distinct_count(), d.total_count());
}

#[test]
fn octagon_orientation_pairing_and_multiplicity() {
    let set = enumerate_saddle_connections(&build_regular_octagon(), 6.0, &EnumerationLimits::default()).unwrap();
    let keys = set.keys();
    for e in set.entries() {
        let neg = flatgap::geometry::exact::VectorKey::Exact(e.exact.unwrap().neg());
        assert!(keys.contains(&neg));
    }
    // sides of the octagon: 8 directions of length 1
    let unit = set.entries().iter().filter(|e| (e.vector.norm() - 1.0).abs() < 1e-12).count();
    assert_eq!(unit, 8);
    assert!(direction_set(&set).max_multiplicity() <= 4);
}

#[test]
fn multiplicity_stays_within_four_g_minus_four() {
    let barrier = flatgap::geometry::build_barrier_surface_exact(&flatgap::geometry::ExactReal::parse("1/sqrt(2)").unwrap()).unwrap();
    for s in [build_regular_octagon(), barrier] {
        let g = s.stratum().unwrap().genus as usize;
        let set = enumerate_saddle_connections(&s, 25.0, &EnumerationLimits::default()).unwrap();
        assert!(direction_set(&set).max_multiplicity() <= 4 * g - 4);
    }
}

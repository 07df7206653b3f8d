//! Directions of the square torus against a Stern–Brocot enumeration.

use std::f64::consts::TAU;

use flatgap::enumeration::{direction_set, enumerate_saddle_connections, EnumerationLimits};
use flatgap::gaps::gap_report;

/// Primitive `(p, q)` with `p, q ≥ 0` and `p² + q² ≤ r²`, generated as
/// mediants between `(1, 0)` and `(0, 1)`.
fn stern_brocot(r: f64) -> Vec<(i64, i64)> {
    fn descend(a: (i64, i64), b: (i64, i64), r2: i64, out: &mut Vec<(i64, i64)>) {
        let m = (a.0 + b.0, a.1 + b.1);
        if m.0 * m.0 + m.1 * m.1 > r2 {
            return;
        }
        descend(a, m, r2, out);
        out.push(m);
        descend(m, b, r2, out);
    }
    let r2 = (r * r).floor() as i64;
    let mut out = vec![(1, 0)];
    descend((1, 0), (0, 1), r2, &mut out);
    out.push((0, 1));
    out
}

/// The full circle from the first quadrant by quarter turns.
fn all_quadrants(q1: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<(i64, i64)> = q1[..q1.len() - 1].to_vec();
    for _ in 0..4 {
        out.extend(&cur);
        cur = cur.iter().map(|&(x, y)| (-y, x)).collect();
    }
    out
}

#[test]
fn directions_are_the_farey_points_in_order() {
    for r in [1.0, 3.0, 7.5, 20.0, 50.0] {
        let set = enumerate_saddle_connections(&flatgap::geometry::build_square_torus(), r, &EnumerationLimits::default()).unwrap();
        let dirs = direction_set(&set);
        let want = all_quadrants(&stern_brocot(r));
        let got: Vec<(i64, i64)> = dirs
            .directions()
            .iter()
            .map(|d| (d.representative.x.round() as i64, d.representative.y.round() as i64))
            .collect();
        assert_eq!(got, want, "R = {r}");
    }
}

#[test]
fn neighbours_are_unimodular_and_give_the_smallest_gap() {
    for r in [5.0, 13.0, 40.0] {
        let q1 = stern_brocot(r);
        for w in q1.windows(2) {
            assert_eq!(w[0].0 * w[1].1 - w[0].1 * w[1].0, 1, "R = {r}: {:?}", w);
        }
        let dirs = all_quadrants(&q1);
        let angles: Vec<f64> = dirs.iter().map(|&(x, y)| (y as f64).atan2(x as f64).rem_euclid(TAU)).collect();
        let mut gamma = TAU - angles[angles.len() - 1] + angles[0];
        for w in angles.windows(2) {
            gamma = gamma.min(w[1] - w[0]);
        }
        let set = enumerate_saddle_connections(&flatgap::geometry::build_square_torus(), r, &EnumerationLimits::default()).unwrap();
        let g = gap_report(&direction_set(&set), r).unwrap();
        assert!((g.gamma - gamma).abs() < 1e-12, "R = {r}: {} vs {gamma}", g.gamma);
    }
}

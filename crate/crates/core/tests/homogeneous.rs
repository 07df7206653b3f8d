use std::f64::consts::PI;

use flatgap::enumeration::{enumerate_saddle_connections, EnumerationLimits, HolonomySet};
use flatgap::gaps::Disk;
use flatgap::geometry::exact::{Arith, ExactVector};
use flatgap::geometry::{build_barrier_surface_exact, ExactReal, TranslationSurface};
use flatgap::homogeneous::{count_distribution, covering_torus, siegel_consistency, PointSet};

fn barrier() -> TranslationSurface {
    build_barrier_surface_exact(&ExactReal::parse("1/sqrt(2)").unwrap()).unwrap()
}

#[test]
fn covering_torus_has_half_the_area() {
    let s = barrier();
    let ct = covering_torus(&s, &EnumerationLimits::default()).unwrap();
    assert!((ct.covolume - s.area() / 2.0).abs() < 1e-12);
    assert!((ct.basis[0].cross(ct.basis[1]).abs() - ct.covolume).abs() < 1e-12);
    let mt = ct.marked_torus().unwrap();
    assert!(mt.lattice().distance_to_lattice(mt.translate()) > 1e-3);
}

/// Points kept only when no other point lies strictly between them and the
/// origin, by direct pairwise search.
fn visible(f: &impl Arith<P = ExactVector>, pts: &[ExactVector]) -> Vec<ExactVector> {
    pts.iter()
        .copied()
        .filter(|&p| {
            let pv = f.to_vector(p);
            !pts.iter().any(|&q| {
                let qv = f.to_vector(q);
                q != p && f.orient(p, q) == 0 && f.dot_sign(p, q) > 0 && qv.norm_sq() < pv.norm_sq()
            })
        })
        .collect()
}

#[test]
fn barrier_holonomies_are_the_visible_translate_points() {
    let r = 8.0;
    let s = barrier();
    let geo = enumerate_saddle_connections(&s, r, &EnumerationLimits::default()).unwrap();
    let ct = covering_torus(&s, &EnumerationLimits::default()).unwrap();
    let (f, [b1, b2], v) = ct.exact.unwrap();
    let m = 40;
    // From z₁ the cone points sit at Λ ∪ (Λ + v); from z₂ at Λ ∪ (Λ − v).
    let mut from_z1 = Vec::new();
    let mut from_z2 = Vec::new();
    for a in -m..=m {
        for b in -m..=m {
            let p = f.add(f.scale_int(b1, a), f.scale_int(b2, b));
            for (q, side) in [(p, 0), (f.add(p, v), 1), (f.sub(p, v), 2)] {
                let n = f.to_vector(q).norm();
                if n > 0.0 && n <= r + 1e-9 {
                    if side != 2 {
                        from_z1.push(q);
                    }
                    if side != 1 {
                        from_z2.push(q);
                    }
                }
            }
        }
    }
    let mut pts = visible(&f, &from_z1);
    pts.extend(visible(&f, &from_z2));
    let oracle = HolonomySet::from_exact_vectors(f, pts, r);
    assert_eq!(geo.keys(), oracle.keys());
    assert_eq!(ct.predicted_set(r).keys(), oracle.keys());
}

#[test]
fn saddle_connection_density_over_random_marked_tori() {
    // Λ_prim has density 6/π²; Λ + v and Λ − v each have density 1 and,
    // for almost every v, no blocked points.
    let ratio = siegel_consistency(&Disk { r: 2.5 }, PointSet::SaddleConnections, 20_000, 4).unwrap();
    let target = 6.0 / (PI * PI) + 2.0;
    assert!((ratio.ratio - target).abs() <= 4.0 * ratio.ratio_stderr + 1e-3, "{} vs {target}", ratio.ratio);
}

#[test]
fn count_distribution_is_seed_deterministic() {
    let a = count_distribution(0.2, 0.7, 3000, 9, 1.0, 1e6).unwrap();
    let b = count_distribution(0.2, 0.7, 3000, 9, 1.0, 1e6).unwrap();
    assert_eq!(a.counts, b.counts);
    let c = count_distribution(0.2, 0.7, 3000, 10, 1.0, 1e6).unwrap();
    assert_ne!(a.counts, c.counts);
    let total: f64 = (0..=a.counts.iter().copied().max().unwrap_or(0)).map(|k| a.estimate(k as usize).estimate).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

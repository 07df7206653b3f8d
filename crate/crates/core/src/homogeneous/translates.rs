//! The holonomy set of a double cover of a marked torus, and recovering the
//! torus from a surface.
//!
//! On a surface that doubly covers `C/Λ` branched over two points `z₁, z₂`
//! with `z₂ − z₁ = v`, a saddle connection projects to a segment from a
//! branch point that stops at the first point of `Λ ∪ (Λ ± v)` it meets.
//! Away from rational coincidences this is `Λ_prim ∪ (Λ + v) ∪ (Λ − v)`.

use std::collections::HashMap;

use serde::Serialize;

use super::lattice::{translate_points, Lattice, MarkedTorus};
use crate::enumeration::{saddle_connections, Connection, EnumerationLimits, HolonomyEntry, HolonomyKind, HolonomySet};
use crate::error::{FlatError, Result};
use crate::geometry::exact::{Arith, ExactVector, FloatArith, QuadField, VectorKey};
use crate::geometry::surface::{PointKind, TranslationSurface};
use crate::geometry::vector::PlanarVector;

/// Points of `Λ ∪ (Λ + v)` within `r` that are the first such point on
/// their ray from the origin.
pub fn first_hits<A: Arith>(arith: &A, b1: A::P, b2: A::P, v: A::P, r: f64) -> Vec<A::P> {
    let zero = arith.sub(b1, b1);
    let mut pts = translate_points(arith, b1, b2, zero, r);
    pts.extend(translate_points(arith, b1, b2, v, r));
    let mut keyed: Vec<(f64, f64, A::P)> = pts
        .into_iter()
        .map(|p| {
            let f = arith.to_vector(p);
            (f.angle().rem_euclid(std::f64::consts::TAU), f.norm_sq(), p)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut groups: Vec<(f64, A::P)> = Vec::new();
    for (_, n2, p) in keyed {
        match groups.last_mut() {
            Some(g) if arith.same_ray(g.1, p) => {
                if n2 < g.0 {
                    *g = (n2, p);
                }
            }
            _ => groups.push((n2, p)),
        }
    }
    if groups.len() > 1 && arith.same_ray(groups[0].1, groups[groups.len() - 1].1) {
        let last = groups.pop().expect("nonempty");
        if last.0 < groups[0].0 {
            groups[0] = last;
        }
    }
    groups.into_iter().map(|g| g.1).collect()
}

/// First hits together with their negatives, as a holonomy set.
fn symmetric_set<A: Arith>(arith: &A, b1: A::P, b2: A::P, v: A::P, r: f64, field: Option<QuadField>) -> HolonomySet {
    let hits = first_hits(arith, b1, b2, v, r);
    let entries = hits
        .iter()
        .flat_map(|&p| [p, arith.neg(p)])
        .map(|p| HolonomyEntry {
            vector: arith.to_vector(p),
            exact: arith.exact(p),
            start: 0,
            end: 0,
            kind: HolonomyKind::SaddleConnection,
        })
        .collect();
    HolonomySet::new(entries, r, field)
}

/// `Λ_prim ∪ (Λ ± v)` up to `r`, with points blocked by an earlier point
/// on their ray removed.
pub fn sc_set(mt: &MarkedTorus, r: f64) -> HolonomySet {
    sc_set_scaled(mt, r, 1.0)
}

/// The same set for the torus scaled by `scale`.
pub fn sc_set_scaled(mt: &MarkedTorus, r: f64, scale: f64) -> HolonomySet {
    let [b1, b2] = mt.lattice().reduced().basis();
    let arith = FloatArith::default();
    symmetric_set(&arith, b1.scale(scale), b2.scale(scale), mt.translate().scale(scale), r, None)
}

/// The exact version over a quadratic field, for a lattice of any
/// covolume.
pub fn sc_set_exact(field: QuadField, b1: ExactVector, b2: ExactVector, v: ExactVector, r: f64) -> HolonomySet {
    symmetric_set(&field, b1, b2, v, r, Some(field))
}

/// The torus `C/Λ` and marked translate recovered from a surface with two
/// singular points that doubly covers it.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringTorus {
    pub zeros: [usize; 2],
    pub basis: [PlanarVector; 2],
    pub translate: PlanarVector,
    #[serde(skip)]
    pub exact: Option<(QuadField, [ExactVector; 2], ExactVector)>,
    /// `|cross(b1, b2)|`, equal to half the surface area.
    pub covolume: f64,
}

impl CoveringTorus {
    /// Factor taking `Λ` to covolume 1.
    pub fn normalizing_scale(&self) -> f64 {
        1.0 / self.covolume.sqrt()
    }

    pub fn marked_torus(&self) -> Result<MarkedTorus> {
        let s = self.normalizing_scale();
        let lattice = Lattice::new(self.basis[0].scale(s), self.basis[1].scale(s))?;
        MarkedTorus::new(lattice, self.translate.scale(s))
    }

    /// The predicted holonomy set up to `r`, exact when possible.
    pub fn predicted_set(&self, r: f64) -> HolonomySet {
        match self.exact {
            Some((field, [b1, b2], v)) => sc_set_exact(field, b1, b2, v, r),
            None => {
                let arith = FloatArith::default();
                symmetric_set(&arith, self.basis[0], self.basis[1], self.translate, r, None)
            }
        }
    }
}

fn pick_basis(loops: &[&Connection], covolume: f64) -> Option<(usize, usize)> {
    let n = loops.len().min(40);
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        for j in i + 1..n {
            let c = loops[i].vector.cross(loops[j].vector).abs();
            if c > 1e-9 * covolume && best.is_none_or(|b| c < b.2 - 1e-9 * covolume) {
                best = Some((i, j, c));
            }
        }
    }
    let (i, j, c) = best?;
    ((c - covolume).abs() <= 1e-9 * covolume).then_some((i, j))
}

/// Read `Λ` off the holonomies of saddle connections from the first zero
/// to itself and `v` off a connection between the two zeros.
pub fn covering_torus(s: &TranslationSurface, limits: &EnumerationLimits) -> Result<CoveringTorus> {
    let topo = s.topology()?;
    let zeros: Vec<usize> = topo.classes.iter().filter(|c| c.kind != PointKind::Regular).map(|c| c.id).collect();
    if zeros.len() != 2 {
        return Err(FlatError::InvalidParameter(format!("expected two singular points, found {}", zeros.len())));
    }
    let (z1, z2) = (zeros[0], zeros[1]);
    let covolume = s.area() / 2.0;
    let mut r = 2.0 * s.area().sqrt();
    for _ in 0..6 {
        let cs = saddle_connections(s, r, limits)?;
        let mut loops: Vec<&Connection> = cs.connections.iter().filter(|c| c.start == z1 && c.end == z1).collect();
        loops.sort_by(|a, b| a.vector.norm_sq().total_cmp(&b.vector.norm_sq()));
        let cross = cs
            .connections
            .iter()
            .filter(|c| c.start == z1 && c.end == z2)
            .min_by(|a, b| a.vector.norm_sq().total_cmp(&b.vector.norm_sq()));
        if let (Some((i, j)), Some(cross)) = (pick_basis(&loops, covolume), cross) {
            let (mut c1, mut c2) = (loops[i], loops[j]);
            if c1.vector.cross(c2.vector) < 0.0 {
                std::mem::swap(&mut c1, &mut c2);
            }
            return Ok(build(cs.field, c1, c2, cross, [z1, z2], covolume));
        }
        r *= 2.0;
    }
    Err(FlatError::InvalidParameter("surface does not look like a double cover of a marked torus".into()))
}

fn build(field: Option<QuadField>, c1: &Connection, c2: &Connection, cross: &Connection, zeros: [usize; 2], covolume: f64) -> CoveringTorus {
    let (b1, b2) = (c1.vector, c2.vector);
    let det = b1.cross(b2);
    let v = cross.vector;
    let (a, b) = ((v.cross(b2) / det).floor() as i64, (b1.cross(v) / det).floor() as i64);
    let translate = v - b1.scale(a as f64) - b2.scale(b as f64);
    let exact = match (field, c1.exact, c2.exact, cross.exact) {
        (Some(f), Some(e1), Some(e2), Some(ev)) => Some((f, [e1, e2], ev.sub(e1.scale(a)).sub(e2.scale(b)))),
        _ => None,
    };
    CoveringTorus { zeros, basis: [b1, b2], translate, exact, covolume }
}

/// Keys present in exactly one of two holonomy sets.
pub fn key_difference(a: &HolonomySet, b: &HolonomySet) -> (Vec<VectorKey>, Vec<VectorKey>) {
    let ka = a.keys();
    let kb = b.keys();
    let mut only_a: Vec<VectorKey> = ka.difference(&kb).copied().collect();
    let mut only_b: Vec<VectorKey> = kb.difference(&ka).copied().collect();
    only_a.sort();
    only_b.sort();
    (only_a, only_b)
}

/// Multiplicity of each distinct holonomy in a set, by key.
pub fn multiplicities(set: &HolonomySet) -> HashMap<VectorKey, usize> {
    let mut m = HashMap::new();
    for e in set.entries() {
        *m.entry(e.key()).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn half_translate_against_grid() {
        let mt = MarkedTorus::new(Lattice::identity(), PlanarVector::new(0.5, 0.5)).unwrap();
        let set = sc_set(&mt, 1.0);
        // (±1, 0), (0, ±1) and the four (±1/2, ±1/2)
        assert_eq!(set.distinct().len(), 8);
    }

    #[test]
    fn generic_translate_is_prim_plus_both_translates() {
        let mt = MarkedTorus::new(Lattice::identity(), PlanarVector::new(0.2345, 0.6789)).unwrap();
        let r = 6.0;
        let set = sc_set(&mt, r);
        let mut expected = 0;
        for a in -8i64..=8 {
            for b in -8i64..=8 {
                if a.gcd(&b) == 1 && ((a * a + b * b) as f64) <= r * r {
                    expected += 1;
                }
                for sign in [1.0, -1.0] {
                    let p = PlanarVector::new(a as f64 + sign * 0.2345, b as f64 + sign * 0.6789);
                    if p.norm() <= r {
                        expected += 1;
                    }
                }
            }
        }
        assert_eq!(set.distinct().len(), expected);
    }

    #[test]
    fn basis_change_invariance() {
        let l1 = Lattice::new(PlanarVector::new(1.0, 0.2), PlanarVector::new(0.1, 1.02)).unwrap();
        let [b1, b2] = l1.basis();
        let l2 = Lattice::new(b1 + b2.scale(3.0), b2 + (b1 + b2.scale(3.0))).unwrap();
        let v = PlanarVector::new(0.31, 0.47);
        let a = sc_set(&MarkedTorus::new(l1, v).unwrap(), 5.0);
        let b = sc_set(&MarkedTorus::new(l2, v).unwrap(), 5.0);
        assert_eq!(a.keys(), b.keys());
    }
}

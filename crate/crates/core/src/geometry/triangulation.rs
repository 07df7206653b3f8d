//! Triangulating a translation surface with vertices only at polygon corners.

use super::exact::Arith;
use super::surface::{PointKind, Topology, TranslationSurface};
use super::vector::PlanarVector;
use crate::error::{FlatError, Result};

/// One triangle of the triangulation. Corner `i` sits at the start of edge
/// `i`; edge `i` runs from corner `i` to corner `i + 1` (indices mod 3).
#[derive(Clone, Debug)]
pub struct Triangle<P> {
    pub edges: [P; 3],
    pub float_edges: [PlanarVector; 3],
    /// `(triangle, edge)` glued to each edge.
    pub twin: [(usize, usize); 3],
    pub class: [usize; 3],
    pub angle: [f64; 3],
    /// Cone-angle coordinate of the direction of edge `i` at corner `i`.
    pub offset: [f64; 3],
}

#[derive(Clone, Debug)]
pub struct Triangulation<P> {
    pub triangles: Vec<Triangle<P>>,
    pub class_angle: Vec<f64>,
    pub class_kind: Vec<PointKind>,
    /// Corners around each class in counterclockwise order, with offsets.
    pub class_corners: Vec<Vec<(f64, usize, usize)>>,
}

const EAR_EPS: f64 = 1e-12;

fn inside_closed(p: PlanarVector, a: PlanarVector, b: PlanarVector, c: PlanarVector) -> bool {
    let scale = (b - a).norm().max((c - a).norm()).max(1.0);
    let tol = EAR_EPS * scale * scale;
    (b - a).cross(p - a) >= -tol && (c - b).cross(p - b) >= -tol && (a - c).cross(p - c) >= -tol
}

/// Ear clipping. Returns triangles as triples of polygon vertex indices,
/// counterclockwise. Collinear vertices are never used as ear tips.
pub fn ear_clip(poly: &[PlanarVector]) -> Result<Vec<[usize; 3]>> {
    let mut idx: Vec<usize> = (0..poly.len()).collect();
    let mut out = Vec::with_capacity(poly.len().saturating_sub(2));
    while idx.len() > 3 {
        let m = idx.len();
        let ear = (0..m).find(|&j| {
            let (a, b, c) = (poly[idx[(j + m - 1) % m]], poly[idx[j]], poly[idx[(j + 1) % m]]);
            let scale = (b - a).norm() * (c - b).norm();
            if (b - a).cross(c - b) <= EAR_EPS * scale {
                return false;
            }
            idx.iter().all(|&k| {
                let p = poly[k];
                k == idx[(j + m - 1) % m] || k == idx[j] || k == idx[(j + 1) % m] || !inside_closed(p, a, b, c)
            })
        });
        let j = ear.ok_or_else(|| FlatError::InvalidSurface(vec!["ear clipping found no ear".into()]))?;
        out.push([idx[(j + m - 1) % m], idx[j], idx[(j + 1) % m]]);
        idx.remove(j);
    }
    let (a, b, c) = (poly[idx[0]], poly[idx[1]], poly[idx[2]]);
    if (b - a).cross(c - b) <= 0.0 {
        return Err(FlatError::InvalidSurface(vec!["degenerate final triangle".into()]));
    }
    out.push([idx[0], idx[1], idx[2]]);
    Ok(out)
}

fn interior_angle(e_out: PlanarVector, e_in: PlanarVector) -> f64 {
    // angle at a corner from the outgoing edge to the reversed incoming edge
    e_out.angle_to(-e_in)
}

/// Triangulate `s` using `verts` (vertex coordinates in the chosen number
/// system, same shape as the polygons).
pub fn triangulate<A: Arith>(
    s: &TranslationSurface,
    topo: &Topology,
    arith: &A,
    verts: &[Vec<A::P>],
) -> Result<Triangulation<A::P>> {
    let partners = s.partner_table();
    let mut triangles: Vec<Triangle<A::P>> = Vec::new();
    // (polygon, polygon edge) -> (triangle, edge); diagonals keyed by endpoints
    let mut poly_edge_owner: Vec<Vec<(usize, usize)>> = s.polygons().iter().map(|p| vec![(0, 0); p.len()]).collect();
    let mut diagonal_owner = std::collections::HashMap::new();

    for (p, poly) in s.polygons().iter().enumerate() {
        let n = poly.len();
        for tri in ear_clip(poly)? {
            let t = triangles.len();
            let edges = [0, 1, 2].map(|i| arith.sub(verts[p][tri[(i + 1) % 3]], verts[p][tri[i]]));
            let float_edges = [0, 1, 2].map(|i| poly[tri[(i + 1) % 3]] - poly[tri[i]]);
            let angle = [0, 1, 2].map(|i| interior_angle(float_edges[i], float_edges[(i + 2) % 3]));
            for i in 0..3 {
                let (a, b) = (tri[i], tri[(i + 1) % 3]);
                if b == (a + 1) % n {
                    poly_edge_owner[p][a] = (t, i);
                } else {
                    diagonal_owner.insert((p, a, b), (t, i));
                }
            }
            triangles.push(Triangle {
                edges,
                float_edges,
                twin: [(usize::MAX, 0); 3],
                class: [0, 1, 2].map(|i| topo.class_of[p][tri[i]]),
                angle,
                offset: [0.0; 3],
            });
        }
    }
    for (p, poly) in s.polygons().iter().enumerate() {
        for e in 0..poly.len() {
            let (q, f) = partners[p][e].expect("validated surface has all edges paired");
            let (t, i) = poly_edge_owner[p][e];
            triangles[t].twin[i] = poly_edge_owner[q][f];
        }
    }
    for (&(p, a, b), &(t, i)) in &diagonal_owner {
        let &other = diagonal_owner
            .get(&(p, b, a))
            .ok_or_else(|| FlatError::InvalidSurface(vec!["unmatched triangulation diagonal".into()]))?;
        triangles[t].twin[i] = other;
    }
    let mut triangles = remove_regular_vertices(triangles, topo, arith)?;
    delaunay_flips(&mut triangles, arith);

    // Walk counterclockwise around each vertex class to assign offsets.
    let nclass = topo.classes.len();
    let mut class_corners: Vec<Vec<(f64, usize, usize)>> = vec![Vec::new(); nclass];
    let mut visited = vec![[false; 3]; triangles.len()];
    for t0 in 0..triangles.len() {
        for i0 in 0..3 {
            let c = triangles[t0].class[i0];
            if visited[t0][i0] || !class_corners[c].is_empty() {
                continue;
            }
            let (mut t, mut i, mut acc) = (t0, i0, 0.0);
            loop {
                visited[t][i] = true;
                triangles[t].offset[i] = acc;
                class_corners[c].push((acc, t, i));
                acc += triangles[t].angle[i];
                let (nt, ne) = triangles[t].twin[(i + 2) % 3];
                if (nt, ne) == (t0, i0) {
                    break;
                }
                t = nt;
                i = ne;
                if visited[t][i] {
                    return Err(FlatError::InvalidSurface(vec!["corner cycle does not close".into()]));
                }
            }
            let expected = topo.classes[c].angle;
            if (acc - expected).abs() > 1e-6 {
                return Err(FlatError::InvalidSurface(vec![format!(
                    "class {c}: corner walk gives angle {acc}, expected {expected}"
                )]));
            }
        }
    }
    Ok(Triangulation {
        triangles,
        class_angle: topo.classes.iter().map(|c| c.angle).collect(),
        class_kind: topo.classes.iter().map(|c| c.kind).collect(),
        class_corners,
    })
}

/// Delete every unlabelled vertex of angle 2π whose star is an embedded
/// disk, re-triangulating the star. Such vertices are invisible to
/// geodesics, and leaving them in multiplies the work of the search.
/// Stars containing a loop edge are left alone.
fn remove_regular_vertices<A: Arith>(
    mut tris: Vec<Triangle<A::P>>,
    topo: &Topology,
    arith: &A,
) -> Result<Vec<Triangle<A::P>>> {
    let mut alive = vec![true; tris.len()];
    for class in topo.classes.iter().filter(|c| c.kind == PointKind::Regular) {
        let Some((t0, i0)) = (0..tris.len())
            .filter(|&t| alive[t])
            .find_map(|t| (0..3).find(|&i| tris[t].class[i] == class.id).map(|i| (t, i)))
        else {
            continue;
        };
        // corners around the vertex, counterclockwise
        let mut star = vec![(t0, i0)];
        loop {
            let (t, i) = *star.last().expect("nonempty");
            let next = tris[t].twin[(i + 2) % 3];
            if next == (t0, i0) {
                break;
            }
            star.push(next);
            if star.len() > tris.len() {
                return Err(FlatError::InvalidSurface(vec!["corner cycle does not close".into()]));
            }
        }
        let mut members: Vec<usize> = star.iter().map(|&(t, _)| t).collect();
        members.sort_unstable();
        members.dedup();
        let embedded = members.len() == star.len()
            && star.iter().all(|&(t, i)| tris[t].class[(i + 1) % 3] != class.id && tris[t].class[(i + 2) % 3] != class.id);
        if !embedded || star.len() < 3 {
            continue;
        }
        let d = star.len();
        let pos: Vec<A::P> = star.iter().map(|&(t, i)| tris[t].edges[i]).collect();
        let fpos: Vec<PlanarVector> = pos.iter().map(|&p| arith.to_vector(p)).collect();
        let pclass: Vec<usize> = star.iter().map(|&(t, i)| tris[t].class[(i + 1) % 3]).collect();
        // boundary edge j of the star is edge (i+1) of triangle j
        let boundary: Vec<(usize, usize)> = star.iter().map(|&(t, i)| (t, (i + 1) % 3)).collect();
        let pieces = ear_clip(&fpos)?;
        let first_new = tris.len();
        let mut diag = std::collections::HashMap::new();
        let mut moved = std::collections::HashMap::new();
        for (n, tri) in pieces.iter().enumerate() {
            let t = first_new + n;
            let edges = [0, 1, 2].map(|k| arith.sub(pos[tri[(k + 1) % 3]], pos[tri[k]]));
            let float_edges = [0, 1, 2].map(|k| fpos[tri[(k + 1) % 3]] - fpos[tri[k]]);
            let angle = [0, 1, 2].map(|k| interior_angle(float_edges[k], float_edges[(k + 2) % 3]));
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                if b == (a + 1) % d {
                    moved.insert(boundary[a], (t, k));
                } else {
                    diag.insert((a, b), (t, k));
                }
            }
            tris.push(Triangle {
                edges,
                float_edges,
                twin: [(usize::MAX, 0); 3],
                class: [0, 1, 2].map(|k| pclass[tri[k]]),
                angle,
                offset: [0.0; 3],
            });
            alive.push(true);
        }
        for (&(a, b), &(t, k)) in &diag {
            tris[t].twin[k] = diag[&(b, a)];
        }
        for (&old, &new) in &moved {
            let outside = tris[old.0].twin[old.1];
            let target = moved.get(&outside).copied().unwrap_or(outside);
            tris[new.0].twin[new.1] = target;
            tris[target.0].twin[target.1] = new;
        }
        for &t in &members {
            alive[t] = false;
        }
    }
    // compact
    let mut remap = vec![usize::MAX; tris.len()];
    let mut next = 0;
    for (t, &a) in alive.iter().enumerate() {
        if a {
            remap[t] = next;
            next += 1;
        }
    }
    let out: Vec<Triangle<A::P>> = tris
        .into_iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(mut tri, _)| {
            for tw in &mut tri.twin {
                tw.0 = remap[tw.0];
            }
            tri
        })
        .collect();
    Ok(out)
}

/// Flip edges until every edge is locally Delaunay. Fat triangles mean
/// fewer crossings per unit length during development.
fn delaunay_flips<A: Arith>(tris: &mut [Triangle<A::P>], arith: &A) {
    const SLACK: f64 = 1e-9;
    let max_rounds = 100 * tris.len() + 100;
    for _ in 0..max_rounds {
        let mut flipped = false;
        for t in 0..tris.len() {
            for i in 0..3 {
                let (u, j) = tris[t].twin[i];
                if u == t {
                    continue;
                }
                let (ti, ui) = (&tris[t], &tris[u]);
                let opposite = ti.angle[(i + 2) % 3] + ui.angle[(j + 2) % 3];
                let at_a = ti.angle[i] + ui.angle[(j + 1) % 3];
                let at_b = ti.angle[(i + 1) % 3] + ui.angle[j];
                if opposite > std::f64::consts::PI + SLACK && at_a < std::f64::consts::PI - SLACK && at_b < std::f64::consts::PI - SLACK {
                    flip(tris, arith, t, i);
                    flipped = true;
                }
            }
        }
        if !flipped {
            return;
        }
    }
}

/// Replace the diagonal shared by triangles `(A,B,C)` and `(B,A,D)` with
/// `CD`, giving `(C,A,D)` and `(D,B,C)`.
fn flip<A: Arith>(tris: &mut [Triangle<A::P>], arith: &A, t: usize, i: usize) {
    let (u, j) = tris[t].twin[i];
    let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
    let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
    let (tt, uu) = (tris[t].clone(), tris[u].clone());
    let c_pos = arith.neg(tt.edges[i2]);
    let d_pos = uu.edges[j1];
    let cd = arith.sub(d_pos, c_pos);
    let edges_t = [tt.edges[i2], uu.edges[j1], arith.neg(cd)];
    let edges_u = [uu.edges[j2], tt.edges[i1], cd];
    let class_t = [tt.class[i2], tt.class[i], uu.class[j2]];
    let class_u = [uu.class[j2], tt.class[i1], tt.class[i2]];
    // old outer edge -> new location
    let moves = [((t, i2), (t, 0)), ((u, j1), (t, 1)), ((u, j2), (u, 0)), ((t, i1), (u, 1))];
    let outer = [tt.twin[i2], uu.twin[j1], uu.twin[j2], tt.twin[i1]];
    let build = |edges: [A::P; 3], class: [usize; 3]| {
        let float_edges = edges.map(|e| arith.to_vector(e));
        let angle = [0, 1, 2].map(|k| interior_angle(float_edges[k], float_edges[(k + 2) % 3]));
        Triangle { edges, float_edges, twin: [(usize::MAX, 0); 3], class, angle, offset: [0.0; 3] }
    };
    tris[t] = build(edges_t, class_t);
    tris[u] = build(edges_u, class_u);
    tris[t].twin[2] = (u, 2);
    tris[u].twin[2] = (t, 2);
    for (k, &(_, new)) in moves.iter().enumerate() {
        let target = moves.iter().find(|(old, _)| *old == outer[k]).map(|&(_, n)| n).unwrap_or(outer[k]);
        tris[new.0].twin[new.1] = target;
        tris[target.0].twin[target.1] = new;
    }
}

impl<P> Triangulation<P> {
    /// The same triangulation with float edge vectors only.
    pub fn to_float(&self) -> Triangulation<PlanarVector> {
        let triangles = self
            .triangles
            .iter()
            .map(|t| Triangle {
                edges: t.float_edges,
                float_edges: t.float_edges,
                twin: t.twin,
                class: t.class,
                angle: t.angle,
                offset: t.offset,
            })
            .collect();
        Triangulation {
            triangles,
            class_angle: self.class_angle.clone(),
            class_kind: self.class_kind.clone(),
            class_corners: self.class_corners.clone(),
        }
    }

    /// The corner of class `c` whose angular range contains cone coordinate
    /// `psi` (taken modulo the total angle), and the local offset inside it.
    pub fn corner_at(&self, c: usize, psi: f64) -> (usize, usize, f64) {
        let total = self.class_angle[c];
        let psi = psi.rem_euclid(total);
        let corners = &self.class_corners[c];
        let pos = corners.partition_point(|&(off, _, _)| off <= psi);
        let (off, t, i) = corners[pos.saturating_sub(1)];
        (t, i, psi - off)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builders::{build_regular_octagon, build_square_torus};
    use crate::geometry::exact::FloatArith;

    #[test]
    fn ear_clip_handles_collinear_vertices() {
        let poly: Vec<PlanarVector> = [(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (1.0, 1.0), (0.5, 1.0), (0.0, 1.0)]
            .iter()
            .map(|&(x, y)| PlanarVector::new(x, y))
            .collect();
        let tris = ear_clip(&poly).unwrap();
        assert_eq!(tris.len(), 4);
        let area: f64 = tris.iter().map(|t| (poly[t[1]] - poly[t[0]]).cross(poly[t[2]] - poly[t[0]]) / 2.0).sum();
        assert!((area - 1.0).abs() < 1e-15);
    }

    #[test]
    fn octagon_corner_walk() {
        let s = build_regular_octagon();
        let topo = s.topology().unwrap();
        let tr = triangulate(&s, &topo, &FloatArith::default(), s.polygons()).unwrap();
        assert_eq!(tr.triangles.len(), 6);
        assert_eq!(tr.class_corners.len(), 1);
        assert_eq!(tr.class_corners[0].len(), 18);
        assert!((tr.class_angle[0] - 6.0 * std::f64::consts::PI).abs() < 1e-9);
        for (t, tri) in tr.triangles.iter().enumerate() {
            for i in 0..3 {
                let (u, j) = tri.twin[i];
                assert_eq!(tr.triangles[u].twin[j], (t, i));
                let sum = tri.float_edges[i] + tr.triangles[u].float_edges[j];
                assert!(sum.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn torus_corner_lookup() {
        let s = build_square_torus();
        let topo = s.topology().unwrap();
        let tr = triangulate(&s, &topo, &FloatArith::default(), s.polygons()).unwrap();
        let (t, i, local) = tr.corner_at(0, 0.1 + 2.0 * std::f64::consts::TAU);
        assert!(local >= 0.0 && local < tr.triangles[t].angle[i]);
    }
}

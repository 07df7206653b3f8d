//! Straight-line tracing on a float triangulation.
//!
//! Positions are local to a triangle: corner 0 sits at the origin and
//! corner `i + 1` at corner `i` plus edge `i`.

use crate::geometry::triangulation::Triangulation;
use crate::geometry::vector::PlanarVector;

/// Part of a traced geodesic inside one triangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub triangle: usize,
    pub from: PlanarVector,
    pub to: PlanarVector,
}

const TOUCH: f64 = 1e-12;

fn corner_positions(tr: &Triangulation<PlanarVector>, t: usize) -> [PlanarVector; 3] {
    let e = tr.triangles[t].float_edges;
    let v1 = e[0];
    [PlanarVector::new(0.0, 0.0), v1, v1 + e[1]]
}

/// Planar direction of cone coordinate `psi` at class `class`, with the
/// corner it falls in.
pub fn cone_direction(tr: &Triangulation<PlanarVector>, class: usize, psi: f64) -> (usize, usize, PlanarVector) {
    let (t, i, local) = tr.corner_at(class, psi);
    let base = tr.triangles[t].float_edges[i].angle();
    (t, i, PlanarVector::from_polar(1.0, base + local))
}

/// Trace a geodesic of length `len` leaving cone point `class` at cone
/// coordinate `psi`.
pub fn trace_from_vertex(tr: &Triangulation<PlanarVector>, class: usize, psi: f64, len: f64) -> Vec<Segment> {
    let (t, i, dir) = cone_direction(tr, class, psi);
    trace(tr, t, corner_positions(tr, t)[i], dir, len)
}

/// Trace a geodesic of length `len` from `pos` in triangle `t` along the
/// unit vector `dir`.
pub fn trace(tr: &Triangulation<PlanarVector>, t: usize, pos: PlanarVector, dir: PlanarVector, len: f64) -> Vec<Segment> {
    let mut out = Vec::new();
    let (mut t, mut pos, mut left) = (t, pos, len);
    // guards against a ray stuck at a vertex
    let max_steps = 64 + 16 * tr.triangles.len() * (1 + len as usize);
    for _ in 0..max_steps {
        let v = corner_positions(tr, t);
        let edges = tr.triangles[t].float_edges;
        let mut exit: Option<(usize, f64)> = None;
        for j in 0..3 {
            let den = dir.cross(edges[j]);
            if edges[j].cross(dir) >= 0.0 {
                continue;
            }
            let s = ((v[j] - pos).cross(edges[j]) / den).max(0.0);
            if exit.is_none_or(|(_, best)| s < best) {
                exit = Some((j, s));
            }
        }
        let Some((j, s)) = exit else {
            break;
        };
        if s >= left {
            out.push(Segment { triangle: t, from: pos, to: pos + dir.scale(left) });
            return out;
        }
        let hit = pos + dir.scale(s);
        out.push(Segment { triangle: t, from: pos, to: hit });
        left -= s;
        let (t2, j2) = tr.triangles[t].twin[j];
        let w = corner_positions(tr, t2);
        pos = hit - v[j] + w[(j2 + 1) % 3];
        t = t2;
    }
    out
}

/// Whether two closed segments meet, with a small tolerance.
pub fn segments_meet(a0: PlanarVector, a1: PlanarVector, b0: PlanarVector, b1: PlanarVector) -> bool {
    let da = a1 - a0;
    let db = b1 - b0;
    let scale = (da.norm() * db.norm()).max(1e-300);
    let d1 = da.cross(b0 - a0) / scale;
    let d2 = da.cross(b1 - a0) / scale;
    let d3 = db.cross(a0 - b0) / scale;
    let d4 = db.cross(a1 - b0) / scale;
    let straddles = |x: f64, y: f64| (x <= TOUCH && y >= -TOUCH) || (x >= -TOUCH && y <= TOUCH);
    if da.cross(db).abs() / scale > TOUCH {
        return straddles(d1, d2) && straddles(d3, d4);
    }
    // parallel: overlap only if collinear and the projections intersect
    if d1.abs() > TOUCH {
        return false;
    }
    let u = da.scale(1.0 / da.norm().max(1e-300));
    let (p0, p1) = (0.0, da.norm());
    let (q0, q1) = ((b0 - a0).dot(u), (b1 - a0).dot(u));
    q0.max(q1) >= p0 - TOUCH && q0.min(q1) <= p1 + TOUCH
}

/// Whether two traced geodesics share a point.
pub fn paths_meet(a: &[Segment], b: &[Segment]) -> bool {
    a.iter().any(|x| b.iter().any(|y| x.triangle == y.triangle && segments_meet(x.from, x.to, y.from, y.to)))
}

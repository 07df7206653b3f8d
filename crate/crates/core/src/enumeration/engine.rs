//! Saddle-connection search by developing triangles into the plane.
//!
//! From every corner at a singular point we unfold the triangulation along
//! an open visibility wedge. A developed vertex strictly inside the wedge is
//! visible from the start: it is emitted if singular and the wedge splits
//! around it. Rays through regular (unlabelled, angle 2π) vertices continue
//! straight on. Frames whose exit edge lies entirely outside the disk of
//! radius `R` are pruned, so nothing of length `≤ R` is missed.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FlatError, Result};
use crate::geometry::exact::Arith;
use crate::geometry::surface::PointKind;
use crate::geometry::triangulation::Triangulation;
use crate::geometry::vector::PlanarVector;

/// Relative slack on the search radius; vectors within it of `R` count as
/// inside and pruning never cuts closer than this.
pub const RADIUS_SLACK: f64 = 1e-12;

pub fn within_radius(v: PlanarVector, r: f64) -> bool {
    v.norm() <= r * (1.0 + RADIUS_SLACK)
}

/// Orientation signs whose float value is this far from zero (relative to
/// the product of lengths) are trusted without an exact check.
const FILTER: f64 = 1e-9;

/// Triangles are charged to the shared counter in batches of this size.
const COUNT_BATCH: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationLimits {
    pub max_triangles: u64,
    pub max_connections: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_triangles: 10_000_000, max_connections: 1_000_000 }
    }
}

/// A saddle connection as found by the search, with the cone-angle
/// coordinates of its initial and final directions.
#[derive(Clone, Copy, Debug)]
pub struct RawConnection<P> {
    pub start: usize,
    pub end: usize,
    /// Cone coordinate of the outgoing direction at the start point.
    pub start_angle: f64,
    /// Cone coordinate of the direction pointing back along the connection
    /// at the end point.
    pub end_angle: f64,
    pub holonomy: P,
    pub vector: PlanarVector,
}

/// A developed point in the search's number system with a float shadow.
#[derive(Clone, Copy, Debug)]
struct Pt<P> {
    e: P,
    f: PlanarVector,
}

struct Frame<P> {
    t: usize,
    k: usize,
    pa: Pt<P>,
    pb: Pt<P>,
    wr: Pt<P>,
    wl: Pt<P>,
    ray: bool,
}

struct Start {
    class: usize,
    offset: f64,
    base: PlanarVector,
}

struct Search<'a, A: Arith> {
    tr: &'a Triangulation<A::P>,
    arith: &'a A,
    r: f64,
    r2_prune: f64,
    limits: EnumerationLimits,
    triangles: &'a AtomicU64,
    connections: &'a AtomicU64,
    exceeded: &'a AtomicBool,
}

/// Per-start-corner state.
struct Local<P> {
    out: Vec<RawConnection<P>>,
    stack: Vec<Frame<P>>,
    pending: u64,
}

/// Angle swept counterclockwise from `from` to `to`, in `[0, 2π)`, with
/// tiny negative values clamped to 0.
fn ccw_angle(from: PlanarVector, to: PlanarVector) -> f64 {
    let a = from.angle_to(to);
    if a < 0.0 {
        if a > -1e-12 {
            0.0
        } else {
            a + std::f64::consts::TAU
        }
    } else {
        a
    }
}

/// Distance from the origin to the part of segment `p→q` seen inside the
/// wedge `(wr, wl)`.
fn clipped_distance(p: PlanarVector, q: PlanarVector, wr: PlanarVector, wl: PlanarVector) -> f64 {
    let u = q - p;
    let param = |w: PlanarVector| {
        let den = w.cross(u);
        if den.abs() < 1e-300 {
            None
        } else {
            Some((-w.cross(p) / den).clamp(0.0, 1.0))
        }
    };
    let (l1, l2) = match (param(wr), param(wl)) {
        (Some(a), Some(b)) => (a.min(b), a.max(b)),
        _ => (0.0, 1.0),
    };
    let (x, y) = (p + u.scale(l1), p + u.scale(l2));
    let d = y - x;
    let len2 = d.norm_sq();
    if len2 == 0.0 {
        return x.norm();
    }
    let s = (-x.dot(d) / len2).clamp(0.0, 1.0);
    (x + d.scale(s)).norm()
}

impl<A: Arith> Search<'_, A> {
    fn is_singular(&self, class: usize) -> bool {
        self.tr.class_kind[class] != PointKind::Regular
    }

    fn pt(&self, e: A::P) -> Pt<A::P> {
        Pt { e, f: self.arith.to_vector(e) }
    }

    fn add_edge(&self, p: Pt<A::P>, t: usize, i: usize) -> Pt<A::P> {
        let tri = &self.tr.triangles[t];
        Pt { e: self.arith.add(p.e, tri.edges[i]), f: p.f + tri.float_edges[i] }
    }

    fn sub_edge(&self, p: Pt<A::P>, t: usize, i: usize) -> Pt<A::P> {
        let tri = &self.tr.triangles[t];
        Pt { e: self.arith.sub(p.e, tri.edges[i]), f: p.f - tri.float_edges[i] }
    }

    /// Sign of `cross(a, b)`, from floats when clearly nonzero.
    fn orient(&self, a: &Pt<A::P>, b: &Pt<A::P>) -> i8 {
        let c = a.f.cross(b.f);
        if c * c > FILTER * FILTER * a.f.norm_sq() * b.f.norm_sq() {
            if c > 0.0 {
                1
            } else {
                -1
            }
        } else {
            self.arith.orient(a.e, b.e)
        }
    }

    fn count_triangle(&self, local: &mut Local<A::P>) -> bool {
        local.pending += 1;
        if local.pending >= COUNT_BATCH {
            self.flush(local);
        }
        !self.exceeded.load(Ordering::Relaxed)
    }

    fn flush(&self, local: &mut Local<A::P>) {
        let n = std::mem::take(&mut local.pending);
        if self.triangles.fetch_add(n, Ordering::Relaxed) + n > self.limits.max_triangles {
            self.exceeded.store(true, Ordering::Relaxed);
        }
    }

    fn emit(&self, local: &mut Local<A::P>, start: &Start, t: usize, j: usize, hol: A::P) {
        let v = self.arith.to_vector(hol);
        if !within_radius(v, self.r) {
            return;
        }
        if self.connections.fetch_add(1, Ordering::Relaxed) + 1 > self.limits.max_connections {
            self.exceeded.store(true, Ordering::Relaxed);
            return;
        }
        let tri = &self.tr.triangles[t];
        local.out.push(RawConnection {
            start: start.class,
            end: tri.class[j],
            start_angle: start.offset + ccw_angle(start.base, v),
            end_angle: tri.offset[j] + ccw_angle(tri.float_edges[j], -v),
            holonomy: hol,
            vector: v,
        });
    }

    /// Queue the frame beyond edge `j` of triangle `t` whose corners sit at
    /// `pos`, unless that edge is out of reach.
    #[allow(clippy::too_many_arguments)]
    fn cross(&self, local: &mut Local<A::P>, t: usize, j: usize, pos: &[Pt<A::P>; 3], wr: Pt<A::P>, wl: Pt<A::P>, ray: bool) {
        let (p, q) = (pos[j], pos[(j + 1) % 3]);
        if p.f.norm_sq().min(q.f.norm_sq()) > self.r2_prune {
            let dist = clipped_distance(p.f, q.f, wr.f, wl.f);
            if dist * dist > self.r2_prune {
                return;
            }
        }
        let (t2, j2) = self.tr.triangles[t].twin[j];
        local.stack.push(Frame { t: t2, k: j2, pa: q, pb: p, wr, wl, ray });
    }

    /// Continue the ray from the origin through the regular vertex at corner
    /// `(t, j)`, located at `p`.
    fn through_regular(&self, local: &mut Local<A::P>, start: &Start, t: usize, j: usize, p: Pt<A::P>) {
        let a = self.arith;
        let (mut t, mut j, mut p) = (t, j, p);
        loop {
            if !self.count_triangle(local) {
                return;
            }
            let tri = &self.tr.triangles[t];
            let class = tri.class[j];
            let target = tri.offset[j] + ccw_angle(tri.float_edges[j], -p.f) + std::f64::consts::PI;
            let Some((t2, i2)) = self.locate(class, target, p.e) else {
                return;
            };
            let tri2 = &self.tr.triangles[t2];
            if a.orient(tri2.edges[i2], p.e) == 0 {
                let q = self.add_edge(p, t2, i2);
                if !within_radius(q.f, self.r) {
                    return;
                }
                let j2 = (i2 + 1) % 3;
                if self.is_singular(tri2.class[j2]) {
                    self.emit(local, start, t2, j2, q.e);
                    return;
                }
                (t, j, p) = (t2, j2, q);
                continue;
            }
            let mut pos = [p; 3];
            pos[(i2 + 1) % 3] = self.add_edge(p, t2, i2);
            pos[(i2 + 2) % 3] = self.sub_edge(p, t2, (i2 + 2) % 3);
            self.cross(local, t2, (i2 + 1) % 3, &pos, p, p, true);
            return;
        }
    }

    /// The corner of `class` whose half-open range `[e_i, -e_{i+2})`
    /// contains direction `d`, starting the search near cone coordinate
    /// `psi`.
    fn locate(&self, class: usize, psi: f64, d: A::P) -> Option<(usize, usize)> {
        let a = self.arith;
        let corners = &self.tr.class_corners[class];
        let total = self.tr.class_angle[class];
        let psi = psi.rem_euclid(total);
        let n = corners.len();
        let pos = corners.partition_point(|&(off, _, _)| off <= psi).saturating_sub(1);
        let contains = |t: usize, i: usize| {
            let tri = &self.tr.triangles[t];
            let e = tri.edges[i];
            let back = a.neg(tri.edges[(i + 2) % 3]);
            let o = a.orient(e, d);
            (o > 0 || (o == 0 && a.dot_sign(e, d) > 0)) && a.orient(d, back) > 0
        };
        [0, 1, n - 1, 2, n.saturating_sub(2)].iter().find_map(|&delta| {
            let (_, t, i) = corners[(pos + delta) % n];
            contains(t, i).then_some((t, i))
        })
    }

    /// Handle a developed vertex that the ray or wedge sees directly.
    fn visit_vertex(&self, local: &mut Local<A::P>, start: &Start, t: usize, j: usize, p: Pt<A::P>) {
        if within_radius(p.f, self.r) {
            if self.is_singular(self.tr.triangles[t].class[j]) {
                self.emit(local, start, t, j, p.e);
            } else {
                self.through_regular(local, start, t, j, p);
            }
        }
    }

    fn run_corner(&self, t0: usize, i0: usize) -> Vec<RawConnection<A::P>> {
        let a = self.arith;
        let tri = &self.tr.triangles[t0];
        let start = Start { class: tri.class[i0], offset: tri.offset[i0], base: tri.float_edges[i0] };
        let mut local = Local { out: Vec::new(), stack: Vec::new(), pending: 0 };
        let i1 = (i0 + 1) % 3;
        let i2 = (i0 + 2) % 3;
        let zero = self.pt(a.sub(tri.edges[i0], tri.edges[i0]));
        let mut pos = [zero; 3];
        pos[i1] = self.add_edge(zero, t0, i0);
        pos[i2] = self.sub_edge(zero, t0, i2);
        if !self.count_triangle(&mut local) {
            return local.out;
        }
        self.visit_vertex(&mut local, &start, t0, i1, pos[i1]);
        self.cross(&mut local, t0, i1, &pos, pos[i1], pos[i2], false);

        while let Some(f) = local.stack.pop() {
            if !self.count_triangle(&mut local) {
                break;
            }
            let (k1, k2) = ((f.k + 1) % 3, (f.k + 2) % 3);
            let mut pos = [f.pa; 3];
            pos[k1] = f.pb;
            pos[k2] = self.add_edge(f.pb, f.t, k1);
            let pc = pos[k2];
            if f.ray {
                match self.orient(&f.wr, &pc) {
                    0 => self.visit_vertex(&mut local, &start, f.t, k2, pc),
                    o if o > 0 => self.cross(&mut local, f.t, k1, &pos, f.wr, f.wl, true),
                    _ => self.cross(&mut local, f.t, k2, &pos, f.wr, f.wl, true),
                }
                continue;
            }
            let right = self.orient(&f.wr, &pc);
            let left = self.orient(&pc, &f.wl);
            if right > 0 && left > 0 {
                self.visit_vertex(&mut local, &start, f.t, k2, pc);
                self.cross(&mut local, f.t, k1, &pos, f.wr, pc, false);
                self.cross(&mut local, f.t, k2, &pos, pc, f.wl, false);
            } else if right <= 0 {
                self.cross(&mut local, f.t, k2, &pos, f.wr, f.wl, false);
            } else {
                self.cross(&mut local, f.t, k1, &pos, f.wr, f.wl, false);
            }
        }
        self.flush(&mut local);
        local.out
    }
}

/// All saddle connections of length at most `r`, one entry per geodesic
/// and orientation, sorted by start point and start angle.
pub fn develop_connections<A: Arith>(
    tr: &Triangulation<A::P>,
    arith: &A,
    r: f64,
    limits: &EnumerationLimits,
) -> Result<Vec<RawConnection<A::P>>> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(FlatError::InvalidParameter(format!("radius {r} must be positive and finite")));
    }
    let triangles = AtomicU64::new(0);
    let connections = AtomicU64::new(0);
    let exceeded = AtomicBool::new(false);
    let reach = r * (1.0 + 1e-9);
    let search = Search {
        tr,
        arith,
        r,
        r2_prune: reach * reach,
        limits: *limits,
        triangles: &triangles,
        connections: &connections,
        exceeded: &exceeded,
    };
    let starts: Vec<(usize, usize)> = tr
        .triangles
        .iter()
        .enumerate()
        .flat_map(|(t, tri)| (0..3).filter(move |&i| tr.class_kind[tri.class[i]] != PointKind::Regular).map(move |i| (t, i)))
        .collect();
    let found: Vec<Vec<RawConnection<A::P>>> = starts.par_iter().map(|&(t, i)| search.run_corner(t, i)).collect();
    if exceeded.load(Ordering::Relaxed) {
        let over_triangles = triangles.load(Ordering::Relaxed) > limits.max_triangles;
        return Err(if over_triangles {
            FlatError::ResourceCap { what: "developed triangles", limit: limits.max_triangles, radius: r }
        } else {
            FlatError::ResourceCap { what: "saddle connections", limit: limits.max_connections, radius: r }
        });
    }
    let mut all: Vec<RawConnection<A::P>> = found.into_iter().flatten().collect();
    all.sort_by(|x, y| {
        x.start
            .cmp(&y.start)
            .then(x.start_angle.total_cmp(&y.start_angle))
            .then(x.vector.norm_sq().total_cmp(&y.vector.norm_sq()))
    });
    Ok(all)
}

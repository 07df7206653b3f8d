//! Cylinder decompositions in saddle-connection directions.
//!
//! A direction decomposes when every separatrix leaving a singular or marked
//! point in that direction is a saddle connection. The bottom boundary of
//! each cylinder is then a cycle of the map sending a connection to the one
//! leaving its endpoint with the cylinder still on the left, and the height
//! is the smallest perpendicular component of a connection crossing it.

use std::f64::consts::PI;

use serde::Serialize;

use super::develop::{trace, trace_from_vertex, Segment};
use super::directions::group_by_ray;
use super::engine::{within_radius, EnumerationLimits};
use super::{saddle_connections, Connection, ConnectionSet};
use crate::error::{FlatError, Result};
use crate::geometry::exact::ExactVector;
use crate::geometry::surface::{PointKind, TranslationSurface};
use crate::geometry::triangulation::Triangulation;
use crate::geometry::vector::{normalize_angle, PlanarVector};

/// Tolerance when matching cone coordinates.
const CONE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cylinder {
    pub core_holonomy: PlanarVector,
    #[serde(skip)]
    pub exact: Option<ExactVector>,
    /// Height measured perpendicular to the core.
    pub width: f64,
    pub area: f64,
    /// Angle of the core holonomy in `[0, 2π)`.
    pub direction: f64,
    /// A cone point on the bottom boundary.
    pub anchor_class: usize,
    /// Cone coordinate of the core direction at the anchor, with the
    /// cylinder on the counterclockwise side.
    pub anchor_angle: f64,
    /// Saddle connections along the bottom boundary.
    pub boundary_connections: usize,
}

impl Cylinder {
    pub fn length(&self) -> f64 {
        self.core_holonomy.norm()
    }
}

/// Cylinders with core length at most `radius`, along with the geometry
/// needed to locate them on the surface.
#[derive(Clone, Debug)]
pub struct CylinderSet {
    pub cylinders: Vec<Cylinder>,
    pub radius: f64,
    pub surface_area: f64,
    /// Saddle-connection directions (within `radius`) that did not decompose
    /// within the search radius.
    pub undecomposed: usize,
    pub triangulation: Triangulation<PlanarVector>,
}

impl CylinderSet {
    pub fn len(&self) -> usize {
        self.cylinders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty()
    }

    /// The closed geodesic at mid-height of cylinder `i`.
    pub fn core_curve(&self, i: usize) -> Vec<Segment> {
        let c = &self.cylinders[i];
        let up = trace_from_vertex(&self.triangulation, c.anchor_class, c.anchor_angle + PI / 2.0, c.width / 2.0);
        let Some(mid) = up.last() else {
            return Vec::new();
        };
        let dir = PlanarVector::from_polar(1.0, c.direction);
        trace(&self.triangulation, mid.triangle, mid.to, dir, c.length())
    }
}

fn cone_close(a: f64, b: f64, total: f64) -> bool {
    let d = (a - b).rem_euclid(total);
    d < CONE_TOL || total - d < CONE_TOL
}

/// Connections leaving each class, sorted by start angle.
fn by_start(cs: &ConnectionSet) -> Vec<Vec<&Connection>> {
    let mut out = vec![Vec::new(); cs.class_angle.len()];
    for c in &cs.connections {
        out[c.start].push(c);
    }
    for v in &mut out {
        v.sort_by(|a, b| a.start_angle.total_cmp(&b.start_angle));
    }
    out
}

/// Smallest perpendicular component, relative to unit vector `d`, of a
/// connection leaving the class at a cone coordinate strictly inside
/// `(a, a + π)`.
fn crossing_height(outgoing: &[&Connection], total: f64, a: f64, d: PlanarVector) -> Option<f64> {
    let lo = (a + CONE_TOL).rem_euclid(total);
    let span = PI - 2.0 * CONE_TOL;
    let first = outgoing.partition_point(|c| c.start_angle < lo);
    let n = outgoing.len();
    let mut best: Option<f64> = None;
    for k in 0..n {
        let c = outgoing[(first + k) % n];
        if (c.start_angle - lo).rem_euclid(total) > span {
            break;
        }
        let h = d.cross(c.vector);
        if h > 0.0 && best.is_none_or(|b| h < b) {
            best = Some(h);
        }
    }
    best
}

/// Cylinders in the direction of `group`, or `None` when the direction does
/// not decompose.
fn direction_cylinders(
    cs: &ConnectionSet,
    outgoing: &[Vec<&Connection>],
    group: &[&Connection],
    surface_area: f64,
) -> Option<Vec<Cylinder>> {
    let n = group.len();
    let mut next = vec![usize::MAX; n];
    for (i, c) in group.iter().enumerate() {
        let total = cs.class_angle[c.end];
        let want = c.end_angle - PI;
        next[i] = group.iter().position(|g| g.start == c.end && cone_close(g.start_angle, want, total))?;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut area_sum = 0.0;
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            cycle.push(j);
            j = next[j];
        }
        if j != i {
            // the map is not a permutation
            return None;
        }
        let core = cycle.iter().fold(PlanarVector::new(0.0, 0.0), |acc, &k| acc + group[k].vector);
        let exact = cycle.iter().try_fold(None::<ExactVector>, |acc, &k| {
            let e = group[k].exact?;
            Some(Some(acc.map_or(e, |a| a.add(e))))
        });
        let exact = exact.flatten().filter(|_| cs.field.is_some());
        let d = core.scale(1.0 / core.norm());
        let mut height: Option<f64> = None;
        for &k in &cycle {
            let c = group[k];
            let h = crossing_height(&outgoing[c.start], cs.class_angle[c.start], c.start_angle, d)?;
            height = Some(height.map_or(h, |x: f64| x.min(h)));
        }
        let width = height?;
        let anchor = group[cycle[0]];
        area_sum += core.norm() * width;
        out.push(Cylinder {
            core_holonomy: core,
            exact,
            width,
            area: core.norm() * width,
            direction: normalize_angle(core.angle()),
            anchor_class: anchor.start,
            anchor_angle: anchor.start_angle,
            boundary_connections: cycle.len(),
        });
    }
    if (area_sum - surface_area).abs() > 1e-6 * surface_area {
        return None;
    }
    Some(out)
}

/// All maximal cylinders with core length at most `r`, in both
/// orientations, found in directions that decompose completely.
pub fn enumerate_cylinders(s: &TranslationSurface, r: f64, limits: &EnumerationLimits) -> Result<CylinderSet> {
    enumerate_cylinders_searching(s, r, 0.0, limits)
}

/// As [`enumerate_cylinders`], tracing separatrices to at least
/// `min_search` so that directions with long boundary connections can
/// still be certified.
pub fn enumerate_cylinders_searching(
    s: &TranslationSurface,
    r: f64,
    min_search: f64,
    limits: &EnumerationLimits,
) -> Result<CylinderSet> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(FlatError::InvalidParameter(format!("radius {r} must be positive and finite")));
    }
    let surface_area = s.area();
    let short = saddle_connections(s, r, limits)?;
    let Some(shortest) = short.connections.iter().map(|c| c.vector.norm()).min_by(f64::total_cmp) else {
        return Ok(CylinderSet {
            cylinders: Vec::new(),
            radius: r,
            surface_area,
            undecomposed: 0,
            triangulation: short.triangulation,
        });
    };
    // a cylinder of core ≤ r has height ≤ area / shortest, and some
    // connection crosses it within this length
    let search = (r * r + (surface_area / shortest).powi(2)).sqrt().max(min_search);
    let cs = saddle_connections(s, search, limits)?;
    let separatrices: usize = (0..cs.class_angle.len())
        .filter(|&c| cs.class_kind[c] != PointKind::Regular)
        .map(|c| (cs.class_angle[c] / (2.0 * PI)).round() as usize)
        .sum();
    let outgoing = by_start(&cs);

    let mut sorted: Vec<&Connection> = cs.connections.iter().collect();
    sorted.sort_by(|a, b| normalize_angle(a.vector.angle()).total_cmp(&normalize_angle(b.vector.angle())));
    let groups = group_by_ray(&sorted, cs.field, |c| (c.vector, c.exact));

    let mut cylinders = Vec::new();
    let mut undecomposed = 0;
    for g in groups {
        let group: Vec<&Connection> = g.iter().map(|&i| sorted[i]).collect();
        if !group.iter().any(|c| within_radius(c.vector, r)) {
            continue;
        }
        let found = if group.len() == separatrices {
            direction_cylinders(&cs, &outgoing, &group, surface_area)
        } else {
            None
        };
        match found {
            Some(cyls) => cylinders.extend(cyls.into_iter().filter(|c| within_radius(c.core_holonomy, r))),
            None => undecomposed += 1,
        }
    }
    cylinders.sort_by(|a, b| a.direction.total_cmp(&b.direction).then(a.length().total_cmp(&b.length())));
    Ok(CylinderSet { cylinders, radius: r, surface_area, undecomposed, triangulation: cs.triangulation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builders::{build_regular_octagon, build_square_torus};

    #[test]
    fn torus_unit_cylinders() {
        let set = enumerate_cylinders(&build_square_torus(), 2f64.sqrt(), &EnumerationLimits::default()).unwrap();
        assert_eq!(set.len(), 8);
        for c in &set.cylinders {
            assert!((c.area - 1.0).abs() < 1e-12);
        }
        assert_eq!(set.undecomposed, 0);
    }

    #[test]
    fn octagon_horizontal_direction() {
        let s = build_regular_octagon();
        let set = enumerate_cylinders(&s, 4.0, &EnumerationLimits::default()).unwrap();
        let horizontal: Vec<&Cylinder> = set.cylinders.iter().filter(|c| c.direction.abs() < 1e-9).collect();
        assert_eq!(horizontal.len(), 2);
        let total: f64 = horizontal.iter().map(|c| c.area).sum();
        assert!((total - s.area()).abs() < 1e-9);
    }

    #[test]
    fn below_shortest_is_empty() {
        let set = enumerate_cylinders(&build_square_torus(), 0.5, &EnumerationLimits::default()).unwrap();
        assert!(set.is_empty());
    }
}

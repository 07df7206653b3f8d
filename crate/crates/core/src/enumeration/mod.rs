pub mod cylinders;
pub mod develop;
pub mod directions;
pub mod engine;
pub mod holonomy;

pub use cylinders::{enumerate_cylinders, enumerate_cylinders_searching, Cylinder, CylinderSet};
pub use directions::{direction_set, Direction, DirectionSet};
pub use engine::{within_radius, EnumerationLimits};
pub use holonomy::{HolonomyEntry, HolonomyKind, HolonomySet};

use crate::error::Result;
use crate::geometry::exact::{ExactVector, FloatArith, QuadField};
use crate::geometry::surface::{PointKind, TranslationSurface};
use crate::geometry::triangulation::{triangulate, Triangulation};
use crate::geometry::vector::PlanarVector;

/// A saddle connection with the cone-angle coordinates of both ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Connection {
    pub start: usize,
    pub end: usize,
    pub start_angle: f64,
    pub end_angle: f64,
    pub vector: PlanarVector,
    pub exact: Option<ExactVector>,
}

/// Every saddle connection up to `radius`, one per geodesic and
/// orientation, together with the cone data of the surface.
#[derive(Clone, Debug)]
pub struct ConnectionSet {
    pub connections: Vec<Connection>,
    pub field: Option<QuadField>,
    pub radius: f64,
    pub class_angle: Vec<f64>,
    pub class_kind: Vec<PointKind>,
    /// Float copy of the triangulation the search ran on; cone coordinates
    /// of the connections refer to it.
    pub triangulation: Triangulation<PlanarVector>,
}

impl ConnectionSet {
    pub fn holonomy_set(&self) -> HolonomySet {
        let entries = self
            .connections
            .iter()
            .map(|c| HolonomyEntry {
                vector: c.vector,
                exact: c.exact,
                start: c.start,
                end: c.end,
                kind: HolonomyKind::SaddleConnection,
            })
            .collect();
        HolonomySet::new(entries, self.radius, self.field)
    }
}

fn collect<P: Copy>(
    tr: &Triangulation<P>,
    raw: Vec<engine::RawConnection<P>>,
    exact: impl Fn(P) -> Option<ExactVector>,
    field: Option<QuadField>,
    radius: f64,
) -> ConnectionSet {
    let connections = raw
        .into_iter()
        .map(|c| Connection {
            start: c.start,
            end: c.end,
            start_angle: c.start_angle,
            end_angle: c.end_angle,
            vector: c.vector,
            exact: exact(c.holonomy),
        })
        .collect();
    ConnectionSet {
        connections,
        field,
        radius,
        class_angle: tr.class_angle.clone(),
        class_kind: tr.class_kind.clone(),
        triangulation: tr.to_float(),
    }
}

/// All saddle connections of length at most `r`. Uses exact arithmetic when
/// the surface has exact coordinates.
pub fn saddle_connections(s: &TranslationSurface, r: f64, limits: &EnumerationLimits) -> Result<ConnectionSet> {
    let topo = s.topology()?;
    match s.exact() {
        Some(ex) => {
            let tr = triangulate(s, &topo, &ex.field, &ex.polygons)?;
            let raw = engine::develop_connections(&tr, &ex.field, r, limits)?;
            Ok(collect(&tr, raw, Some, Some(ex.field), r))
        }
        None => {
            let arith = FloatArith::default();
            let tr = triangulate(s, &topo, &arith, s.polygons())?;
            let raw = engine::develop_connections(&tr, &arith, r, limits)?;
            Ok(collect(&tr, raw, |_| None, None, r))
        }
    }
}

/// The holonomy set of saddle connections of length at most `r`.
pub fn enumerate_saddle_connections(s: &TranslationSurface, r: f64, limits: &EnumerationLimits) -> Result<HolonomySet> {
    Ok(saddle_connections(s, r, limits)?.holonomy_set())
}

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::exact::{ExactReal, ExactVector, QuadField, Rational};
use super::vector::{PlanarVector, Sl2Matrix};
use crate::error::{FlatError, Result};

/// A directed polygon edge: (polygon index, edge index). Edge `i` runs from
/// vertex `i` to vertex `i + 1`.
pub type EdgeRef = (usize, usize);

/// Coordinates of every polygon vertex in a quadratic field, when known.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCoords {
    pub field: QuadField,
    pub polygons: Vec<Vec<ExactVector>>,
}

/// Polygons glued along pairs of parallel edges by translations.
///
/// The struct may hold malformed data; `validate_surface` says whether it is
/// an actual translation surface, and `topology` refuses to work otherwise.
#[derive(Clone, Debug)]
pub struct TranslationSurface {
    polygons: Vec<Vec<PlanarVector>>,
    gluings: Vec<(EdgeRef, EdgeRef)>,
    labels: Vec<Vec<Option<String>>>,
    exact: Option<ExactCoords>,
}

pub const COORD_TOLERANCE: f64 = 1e-9;
pub const CONE_ANGLE_TOLERANCE: f64 = 1e-6;

impl TranslationSurface {
    /// Assemble a surface without validation. Missing labels are filled
    /// with `None`.
    pub fn from_parts(
        polygons: Vec<Vec<PlanarVector>>,
        gluings: Vec<(EdgeRef, EdgeRef)>,
        labels: Option<Vec<Vec<Option<String>>>>,
    ) -> Self {
        let labels = labels.unwrap_or_else(|| polygons.iter().map(|p| vec![None; p.len()]).collect());
        TranslationSurface { polygons, gluings, labels, exact: None }
    }

    /// Assemble a surface from exact coordinates, keeping them for the exact
    /// enumeration path.
    pub fn from_exact(
        polygons: &[Vec<(ExactReal, ExactReal)>],
        gluings: Vec<(EdgeRef, EdgeRef)>,
        labels: Option<Vec<Vec<Option<String>>>>,
    ) -> Result<Self> {
        let field = QuadField::containing(polygons.iter().flatten().flat_map(|(x, y)| [x, y]))?;
        let mut exact = Vec::with_capacity(polygons.len());
        let mut float = Vec::with_capacity(polygons.len());
        for poly in polygons {
            let ev = poly.iter().map(|(x, y)| field.encode_vector(x, y)).collect::<Result<Vec<_>>>()?;
            float.push(ev.iter().map(|v| field.to_vector(*v)).collect());
            exact.push(ev);
        }
        let mut s = TranslationSurface::from_parts(float, gluings, labels);
        s.exact = Some(ExactCoords { field, polygons: exact });
        Ok(s)
    }

    pub fn polygons(&self) -> &[Vec<PlanarVector>] {
        &self.polygons
    }

    pub fn gluings(&self) -> &[(EdgeRef, EdgeRef)] {
        &self.gluings
    }

    pub fn labels(&self) -> &[Vec<Option<String>>] {
        &self.labels
    }

    pub fn exact(&self) -> Option<&ExactCoords> {
        self.exact.as_ref()
    }

    pub fn edge_vector(&self, p: usize, e: usize) -> PlanarVector {
        let poly = &self.polygons[p];
        poly[(e + 1) % poly.len()] - poly[e]
    }

    /// Total area (sum of signed polygon areas).
    pub fn area(&self) -> f64 {
        self.polygons.iter().map(|p| signed_area(p)).sum()
    }

    /// The partner of every edge, or `None` for an unpaired edge.
    pub fn partner_table(&self) -> Vec<Vec<Option<EdgeRef>>> {
        let mut table: Vec<Vec<Option<EdgeRef>>> = self.polygons.iter().map(|p| vec![None; p.len()]).collect();
        for &(a, b) in &self.gluings {
            if self.edge_exists(a) && self.edge_exists(b) {
                table[a.0][a.1] = Some(b);
                table[b.0][b.1] = Some(a);
            }
        }
        table
    }

    fn edge_exists(&self, (p, e): EdgeRef) -> bool {
        p < self.polygons.len() && e < self.polygons[p].len()
    }

    /// Image under `m`. Integer matrices keep exact coordinates.
    pub fn apply_matrix(&self, m: &Sl2Matrix) -> TranslationSurface {
        let polygons = self.polygons.iter().map(|p| p.iter().map(|v| m.apply(*v)).collect()).collect();
        let exact = match (&self.exact, m.integer_entries()) {
            (Some(ex), Some(ints)) => Some(ExactCoords {
                field: ex.field,
                polygons: ex
                    .polygons
                    .iter()
                    .map(|p| p.iter().map(|v| ex.field.apply_integer_matrix(ints, *v)).collect())
                    .collect(),
            }),
            _ => None,
        };
        TranslationSurface { polygons, gluings: self.gluings.clone(), labels: self.labels.clone(), exact }
    }

    /// Uniform rescaling by a positive rational; exact coordinates survive.
    pub fn scale(&self, factor: Rational) -> Result<TranslationSurface> {
        if factor.num() <= 0 {
            return Err(FlatError::InvalidParameter(format!("scale factor {factor} must be positive")));
        }
        let f = factor.to_f64();
        let polygons = self.polygons.iter().map(|p| p.iter().map(|v| v.scale(f)).collect()).collect();
        let exact = match &self.exact {
            Some(ex) => {
                let field = QuadField::new(ex.field.radicand(), ex.field.denom() * factor.den())?;
                let polygons = ex.polygons.iter().map(|p| p.iter().map(|v| v.scale(factor.num())).collect()).collect();
                Some(ExactCoords { field, polygons })
            }
            None => None,
        };
        Ok(TranslationSurface { polygons, gluings: self.gluings.clone(), labels: self.labels.clone(), exact })
    }

    /// Drop the labels on every vertex class of angle 2π, turning marked
    /// points into ordinary regular points.
    pub fn forget_marked_points(&self) -> Result<TranslationSurface> {
        let topo = self.topology()?;
        let mut out = self.clone();
        for class in topo.classes.iter().filter(|c| c.order == 0) {
            for &(p, v) in &class.corners {
                out.labels[p][v] = None;
            }
        }
        Ok(out)
    }

    /// Label one polygon corner. A labelled class of angle 2π is a marked point.
    pub fn with_label(mut self, corner: (usize, usize), label: &str) -> TranslationSurface {
        self.labels[corner.0][corner.1] = Some(label.to_string());
        self
    }

    pub fn validate(&self) -> ValidationReport {
        validate_surface(self)
    }

    /// Vertex classes and cone angles. Fails unless the surface validates.
    pub fn topology(&self) -> Result<Topology> {
        let report = validate_surface(self);
        if !report.passed() {
            return Err(FlatError::InvalidSurface(report.messages()));
        }
        Ok(report.topology.expect("validated surfaces carry topology"))
    }

    pub fn stratum(&self) -> Result<StratumSignature> {
        Ok(self.topology()?.stratum())
    }
}

pub fn signed_area(poly: &[PlanarVector]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].cross(poly[(i + 1) % n])).sum::<f64>() / 2.0
}

/// Interior angle at vertex `i` of a counterclockwise polygon, in `(0, 2π)`.
pub fn corner_angle(poly: &[PlanarVector], i: usize) -> f64 {
    let n = poly.len();
    let out = poly[(i + 1) % n] - poly[i];
    let back = poly[(i + n - 1) % n] - poly[i];
    let a = out.angle_to(back);
    if a <= 0.0 {
        a + TAU
    } else {
        a
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    /// Cone angle above 2π.
    Zero,
    /// Angle 2π but labelled: treated as an endpoint of saddle connections.
    Marked,
    /// Angle 2π, unlabelled: geodesics pass straight through.
    Regular,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexClass {
    pub id: usize,
    /// Polygon corners making up this point, in discovery order.
    pub corners: Vec<(usize, usize)>,
    pub angle: f64,
    /// `α` with total angle `2π(α + 1)`.
    pub order: u32,
    pub kind: PointKind,
}

impl VertexClass {
    pub fn is_singular(&self) -> bool {
        self.kind != PointKind::Regular
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Topology {
    pub classes: Vec<VertexClass>,
    /// `class_of[p][v]` is the class id of vertex `v` of polygon `p`.
    pub class_of: Vec<Vec<usize>>,
    pub genus: u32,
}

impl Topology {
    pub fn stratum(&self) -> StratumSignature {
        let mut orders: Vec<u32> = self.classes.iter().map(|c| c.order).filter(|&o| o > 0).collect();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        StratumSignature { genus: self.genus, orders }
    }

    pub fn singular_classes(&self) -> impl Iterator<Item = &VertexClass> {
        self.classes.iter().filter(|c| c.is_singular())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSignature {
    pub genus: u32,
    /// Cone orders, largest first.
    pub orders: Vec<u32>,
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o: Vec<String> = self.orders.iter().map(|x| x.to_string()).collect();
        write!(f, "g={} H({})", self.genus, o.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Empty,
    DegeneratePolygon,
    NonFinite,
    NotCounterclockwise,
    NonSimple,
    BadEdgeReference,
    UnpairedEdge,
    MultiplyGlued,
    NotTranslation,
    BadConeAngle,
    EulerCharacteristic,
    BadLabels,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    #[serde(skip)]
    topology: Option<Topology>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(|v| v.message.clone()).collect()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn topology(&self) -> Option<&Topology> {
        self.topology.as_ref()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn segments_touch(a: PlanarVector, b: PlanarVector, c: PlanarVector, d: PlanarVector) -> bool {
    let o = |p: PlanarVector, q: PlanarVector, r: PlanarVector| {
        let v = (q - p).cross(r - p);
        if v.abs() <= COORD_TOLERANCE * COORD_TOLERANCE {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    };
    let on = |p: PlanarVector, q: PlanarVector, r: PlanarVector| {
        r.x >= p.x.min(q.x) - COORD_TOLERANCE
            && r.x <= p.x.max(q.x) + COORD_TOLERANCE
            && r.y >= p.y.min(q.y) - COORD_TOLERANCE
            && r.y <= p.y.max(q.y) + COORD_TOLERANCE
    };
    let (o1, o2, o3, o4) = (o(a, b, c), o(a, b, d), o(c, d, a), o(c, d, b));
    if o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0 && (o1 != 0 || o2 != 0) {
        return true;
    }
    (o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) || (o3 == 0 && on(c, d, a)) || (o4 == 0 && on(c, d, b))
}

pub(crate) fn is_simple(poly: &[PlanarVector]) -> bool {
    let n = poly.len();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if segments_touch(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// Check every translation-surface invariant and report each failure.
pub fn validate_surface(s: &TranslationSurface) -> ValidationReport {
    let mut v = Vec::new();
    let mut fail = |kind, message: String| v.push(Violation { kind, message });

    if s.polygons.is_empty() {
        fail(ViolationKind::Empty, "surface has no polygons".into());
        return ValidationReport { violations: v, topology: None };
    }
    let mut geometry_ok = true;
    for (p, poly) in s.polygons.iter().enumerate() {
        if poly.len() < 3 {
            fail(ViolationKind::DegeneratePolygon, format!("polygon {p} has fewer than 3 vertices"));
            geometry_ok = false;
            continue;
        }
        if poly.iter().any(|x| !x.is_finite()) {
            fail(ViolationKind::NonFinite, format!("polygon {p} has a non-finite coordinate"));
            geometry_ok = false;
            continue;
        }
        for e in 0..poly.len() {
            if s.edge_vector(p, e).norm() <= COORD_TOLERANCE {
                fail(ViolationKind::DegeneratePolygon, format!("polygon {p} edge {e} has zero length"));
                geometry_ok = false;
            }
        }
        if signed_area(poly) <= 0.0 {
            fail(ViolationKind::NotCounterclockwise, format!("polygon {p} is not counterclockwise"));
            geometry_ok = false;
        } else if !is_simple(poly) {
            fail(ViolationKind::NonSimple, format!("polygon {p} is not simple"));
            geometry_ok = false;
        }
    }
    if s.labels.len() != s.polygons.len() || s.labels.iter().zip(&s.polygons).any(|(l, p)| l.len() != p.len()) {
        fail(ViolationKind::BadLabels, "labels do not match polygon shapes".into());
    }

    let mut seen: Vec<Vec<u32>> = s.polygons.iter().map(|p| vec![0; p.len()]).collect();
    let mut gluings_ok = true;
    for &(a, b) in &s.gluings {
        if !s.edge_exists(a) || !s.edge_exists(b) {
            fail(ViolationKind::BadEdgeReference, format!("gluing {a:?}-{b:?} names a missing edge"));
            gluings_ok = false;
            continue;
        }
        if a == b {
            fail(ViolationKind::BadEdgeReference, format!("edge {a:?} glued to itself"));
            gluings_ok = false;
            continue;
        }
        seen[a.0][a.1] += 1;
        seen[b.0][b.1] += 1;
        let sum = s.edge_vector(a.0, a.1) + s.edge_vector(b.0, b.1);
        let exact_ok = s.exact.as_ref().map(|ex| {
            let ev = |(p, e): EdgeRef| {
                let poly = &ex.polygons[p];
                poly[(e + 1) % poly.len()].sub(poly[e])
            };
            ev(a).add(ev(b)).is_zero()
        });
        if exact_ok == Some(false) || (exact_ok.is_none() && sum.norm() > COORD_TOLERANCE) {
            fail(
                ViolationKind::NotTranslation,
                format!("edges {a:?} and {b:?} are not opposite translates"),
            );
            gluings_ok = false;
        }
    }
    for (p, row) in seen.iter().enumerate() {
        for (e, &count) in row.iter().enumerate() {
            if count == 0 {
                fail(ViolationKind::UnpairedEdge, format!("unpaired edge (polygon {p}, edge {e})"));
                gluings_ok = false;
            } else if count > 1 {
                fail(ViolationKind::MultiplyGlued, format!("edge (polygon {p}, edge {e}) glued {count} times"));
                gluings_ok = false;
            }
        }
    }
    if !(geometry_ok && gluings_ok) {
        return ValidationReport { violations: v, topology: None };
    }

    // Vertex classes by union-find over the gluings.
    let offsets: Vec<usize> = s
        .polygons
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        })
        .collect();
    let total: usize = s.polygons.iter().map(Vec::len).sum();
    let idx = |p: usize, i: usize| offsets[p] + i % s.polygons[p].len();
    let mut parent: Vec<usize> = (0..total).collect();
    for &((p, e), (q, f)) in &s.gluings {
        for (x, y) in [(idx(p, e), idx(q, f + 1)), (idx(p, e + 1), idx(q, f))] {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let mut root_to_class = vec![usize::MAX; total];
    let mut classes: Vec<VertexClass> = Vec::new();
    let mut class_of: Vec<Vec<usize>> = s.polygons.iter().map(|p| vec![0; p.len()]).collect();
    for (p, (poly, slots)) in s.polygons.iter().zip(class_of.iter_mut()).enumerate() {
        for (i, slot) in slots.iter_mut().enumerate() {
            let r = find(&mut parent, idx(p, i));
            if root_to_class[r] == usize::MAX {
                root_to_class[r] = classes.len();
                classes.push(VertexClass {
                    id: classes.len(),
                    corners: Vec::new(),
                    angle: 0.0,
                    order: 0,
                    kind: PointKind::Regular,
                });
            }
            let c = root_to_class[r];
            *slot = c;
            classes[c].corners.push((p, i));
            classes[c].angle += corner_angle(poly, i);
        }
    }
    let mut angles_ok = true;
    for c in &mut classes {
        let turns = c.angle / TAU;
        let k = turns.round();
        if k < 1.0 || (turns - k).abs() * TAU > CONE_ANGLE_TOLERANCE {
            fail(
                ViolationKind::BadConeAngle,
                format!("vertex class {} (corner {:?}) has angle {} not a multiple of 2π", c.id, c.corners[0], c.angle),
            );
            angles_ok = false;
            continue;
        }
        c.order = k as u32 - 1;
        let labelled = c.corners.iter().any(|&(p, i)| s.labels.get(p).and_then(|l| l.get(i)).is_some_and(Option::is_some));
        c.kind = if c.order > 0 {
            PointKind::Zero
        } else if labelled {
            PointKind::Marked
        } else {
            PointKind::Regular
        };
    }
    if !angles_ok {
        return ValidationReport { violations: v, topology: None };
    }

    let chi = classes.len() as i64 - s.gluings.len() as i64 + s.polygons.len() as i64;
    let order_sum: i64 = classes.iter().map(|c| c.order as i64).sum();
    if chi > 2 || chi % 2 != 0 || order_sum != -chi {
        fail(
            ViolationKind::EulerCharacteristic,
            format!("Euler characteristic {chi} inconsistent with cone orders summing to {order_sum}"),
        );
        return ValidationReport { violations: v, topology: None };
    }
    let genus = ((2 - chi) / 2) as u32;
    if genus == 0 {
        fail(ViolationKind::EulerCharacteristic, "surface is a sphere".into());
    }
    let topology = Topology { classes, class_of, genus };
    ValidationReport { violations: v, topology: Some(topology) }
}

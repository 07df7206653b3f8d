use std::collections::HashSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::exact::{ExactVector, QuadField, VectorKey, ANGLE_TOLERANCE};
use crate::geometry::vector::{PlanarVector, Sl2Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HolonomyKind {
    SaddleConnection,
    Cylinder,
}

impl HolonomyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            HolonomyKind::SaddleConnection => "saddle_connection",
            HolonomyKind::Cylinder => "cylinder",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HolonomyEntry {
    pub vector: PlanarVector,
    #[serde(skip)]
    pub exact: Option<ExactVector>,
    pub start: usize,
    pub end: usize,
    pub kind: HolonomyKind,
}

impl HolonomyEntry {
    pub fn key(&self) -> VectorKey {
        match self.exact {
            Some(e) => VectorKey::Exact(e),
            None => VectorKey::rounded(self.vector),
        }
    }
}

/// Orientation of `b` relative to `a`: exact when both carry exact
/// coordinates in `field`, otherwise with the angular tolerance.
pub fn orientation(
    field: Option<QuadField>,
    a: (PlanarVector, Option<ExactVector>),
    b: (PlanarVector, Option<ExactVector>),
) -> i8 {
    if let (Some(f), Some(x), Some(y)) = (field, a.1, b.1) {
        return f.cross_sign(x, y);
    }
    let c = a.0.cross(b.0);
    if c.abs() <= ANGLE_TOLERANCE * a.0.norm() * b.0.norm() {
        0
    } else if c > 0.0 {
        1
    } else {
        -1
    }
}

/// Same open ray from the origin.
pub fn same_ray(
    field: Option<QuadField>,
    a: (PlanarVector, Option<ExactVector>),
    b: (PlanarVector, Option<ExactVector>),
) -> bool {
    orientation(field, a, b) == 0 && a.0.dot(b.0) > 0.0
}

/// A finite set of holonomy vectors of norm at most `radius`, deduplicated by
/// (start, end, holonomy) and sorted by angle, then norm.
#[derive(Clone, Debug, Serialize)]
pub struct HolonomySet {
    entries: Vec<HolonomyEntry>,
    radius: f64,
    #[serde(skip)]
    field: Option<QuadField>,
}

impl HolonomySet {
    pub fn new(entries: Vec<HolonomyEntry>, radius: f64, field: Option<QuadField>) -> Self {
        let mut seen = HashSet::new();
        let mut entries: Vec<HolonomyEntry> = entries
            .into_iter()
            .filter(|e| e.vector.norm() > 0.0)
            .filter(|e| seen.insert((e.start, e.end, e.kind, e.key())))
            .collect();
        let field = field.filter(|_| entries.iter().all(|e| e.exact.is_some()));
        entries.sort_by(|a, b| {
            a.vector
                .angle()
                .total_cmp(&b.vector.angle())
                .then(a.vector.norm_sq().total_cmp(&b.vector.norm_sq()))
                .then(a.start.cmp(&b.start))
                .then(a.end.cmp(&b.end))
                .then(a.key().cmp(&b.key()))
        });
        HolonomySet { entries, radius, field }
    }

    /// Plain vectors (single start/end class), as used for synthetic tests
    /// and the lattice models.
    pub fn from_vectors(vectors: impl IntoIterator<Item = PlanarVector>, radius: f64) -> Self {
        let entries = vectors
            .into_iter()
            .map(|v| HolonomyEntry { vector: v, exact: None, start: 0, end: 0, kind: HolonomyKind::SaddleConnection })
            .collect();
        HolonomySet::new(entries, radius, None)
    }

    pub fn from_exact_vectors(field: QuadField, vectors: impl IntoIterator<Item = ExactVector>, radius: f64) -> Self {
        let entries = vectors
            .into_iter()
            .map(|v| HolonomyEntry {
                vector: field.to_vector(v),
                exact: Some(v),
                start: 0,
                end: 0,
                kind: HolonomyKind::SaddleConnection,
            })
            .collect();
        HolonomySet::new(entries, radius, Some(field))
    }

    pub fn entries(&self) -> &[HolonomyEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn field(&self) -> Option<QuadField> {
        self.field
    }

    /// Distinct holonomy vectors, dropping endpoint metadata.
    pub fn distinct(&self) -> Vec<HolonomyEntry> {
        let mut seen = HashSet::new();
        self.entries.iter().filter(|e| seen.insert(e.key())).copied().collect()
    }

    pub fn distinct_vectors(&self) -> Vec<PlanarVector> {
        self.distinct().iter().map(|e| e.vector).collect()
    }

    pub fn keys(&self) -> HashSet<VectorKey> {
        self.entries.iter().map(HolonomyEntry::key).collect()
    }

    /// The entries of norm at most `r`.
    pub fn restrict(&self, r: f64) -> HolonomySet {
        let entries = self.entries.iter().filter(|e| crate::enumeration::within_radius(e.vector, r)).copied().collect();
        HolonomySet { entries, radius: r.min(self.radius), field: self.field }
    }

    /// Image under a linear map. Exact coordinates survive integer matrices.
    pub fn transform(&self, m: &Sl2Matrix) -> HolonomySet {
        let ints = m.integer_entries();
        let entries = self
            .entries
            .iter()
            .map(|e| HolonomyEntry {
                vector: m.apply(e.vector),
                exact: match (self.field, ints, e.exact) {
                    (Some(f), Some(i), Some(x)) => Some(f.apply_integer_matrix(i, x)),
                    _ => None,
                },
                ..*e
            })
            .collect();
        let field = if ints.is_some() { self.field } else { None };
        HolonomySet::new(entries, self.radius * m.operator_norm(), field)
    }

    /// CSV with columns `x,y,norm,angle,start,end,kind`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["x", "y", "norm", "angle", "start", "end", "kind"])?;
        for e in &self.entries {
            out.write_record([
                format!("{:.16e}", e.vector.x),
                format!("{:.16e}", e.vector.y),
                format!("{:.16e}", e.vector.norm()),
                format!("{:.16e}", e.vector.angle()),
                e.start.to_string(),
                e.end.to_string(),
                e.kind.as_str().to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_and_order() {
        let v = |x, y| PlanarVector::new(x, y);
        let s = HolonomySet::from_vectors([v(0.0, 1.0), v(2.0, 0.0), v(1.0, 0.0), v(1.0, 0.0), v(-1.0, 0.0)], 5.0);
        let got: Vec<PlanarVector> = s.entries().iter().map(|e| e.vector).collect();
        assert_eq!(got, vec![v(1.0, 0.0), v(2.0, 0.0), v(0.0, 1.0), v(-1.0, 0.0)]);
    }

    #[test]
    fn csv_has_seventeen_digits() {
        let s = HolonomySet::from_vectors([PlanarVector::new(1.0 / 3.0, 0.0)], 1.0);
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,y,norm,angle,start,end,kind\n"));
        assert!(text.contains("3.3333333333333331e-1"));
    }
}

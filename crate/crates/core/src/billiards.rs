//! Unfolding rational billiard tables into translation surfaces.

use std::f64::consts::PI;

use num_integer::Integer;
use serde::Serialize;

use crate::enumeration::{direction_set, enumerate_saddle_connections, EnumerationLimits};
use crate::error::{FlatError, Result};
use crate::gaps::{gap_report, GapReport};
use crate::geometry::exact::ExactReal;
use crate::geometry::surface::{corner_angle, is_simple, signed_area, EdgeRef, TranslationSurface};
use crate::geometry::vector::PlanarVector;

const ANGLE_MATCH: f64 = 1e-9;
const MAX_DENOMINATOR: u64 = 10_000;

/// A simple polygon whose angles are rational multiples of π.
#[derive(Clone, Debug, Serialize)]
pub struct RationalPolygon {
    vertices: Vec<PlanarVector>,
    /// `(p, q)` in lowest terms with corner angle `π p / q`.
    angle_fractions: Vec<(u64, u64)>,
}

fn rational_approx(x: f64) -> Option<(u64, u64)> {
    (1..=MAX_DENOMINATOR).find_map(|q| {
        let p = (x * q as f64).round();
        ((x - p / q as f64).abs() < ANGLE_MATCH && p > 0.0).then_some((p as u64, q))
    })
}

fn check_simple_ccw(poly: &[PlanarVector], what: &str) -> Result<()> {
    if poly.len() < 3 || poly.iter().any(|v| !v.is_finite()) {
        return Err(FlatError::InvalidParameter(format!("{what} is degenerate")));
    }
    if signed_area(poly) <= 0.0 || !is_simple(poly) {
        return Err(FlatError::InvalidParameter(format!("{what} is not a simple counterclockwise polygon")));
    }
    Ok(())
}

impl RationalPolygon {
    /// Check the given angle fractions against the vertex coordinates.
    pub fn new(vertices: Vec<PlanarVector>, angle_fractions: Vec<(u64, u64)>) -> Result<Self> {
        check_simple_ccw(&vertices, "billiard polygon")?;
        if angle_fractions.len() != vertices.len() {
            return Err(FlatError::InvalidParameter("one angle fraction per vertex required".into()));
        }
        let n = vertices.len();
        let mut total = 0.0;
        for (i, &(p, q)) in angle_fractions.iter().enumerate() {
            if q == 0 || p == 0 || p.gcd(&q) != 1 {
                return Err(FlatError::InvalidParameter(format!("angle fraction {p}/{q} not in lowest terms")));
            }
            let stated = PI * p as f64 / q as f64;
            if (stated - corner_angle(&vertices, i)).abs() > ANGLE_MATCH {
                return Err(FlatError::InvalidParameter(format!(
                    "vertex {i}: stated angle {p}π/{q} does not match the polygon"
                )));
            }
            total += stated;
        }
        if (total - (n as f64 - 2.0) * PI).abs() > ANGLE_MATCH {
            return Err(FlatError::InvalidParameter("angles do not sum to (n-2)π".into()));
        }
        Ok(RationalPolygon { vertices, angle_fractions })
    }

    /// Read the angle fractions off the coordinates; irrational angles are
    /// rejected.
    pub fn from_vertices(vertices: Vec<PlanarVector>) -> Result<Self> {
        check_simple_ccw(&vertices, "billiard polygon")?;
        let fractions = (0..vertices.len())
            .map(|i| {
                rational_approx(corner_angle(&vertices, i) / PI).ok_or_else(|| {
                    FlatError::InvalidParameter(format!("vertex {i} angle is not a rational multiple of π"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RationalPolygon::new(vertices, fractions)
    }

    pub fn vertices(&self) -> &[PlanarVector] {
        &self.vertices
    }

    pub fn angle_fractions(&self) -> &[(u64, u64)] {
        &self.angle_fractions
    }

    pub fn unfold(&self) -> Result<TranslationSurface> {
        BilliardTable::new(vec![self.vertices.clone()], vec![])?.unfold()
    }
}

/// Order of the dihedral group generated by the side reflections.
pub fn reflection_group_order(p: &RationalPolygon) -> u64 {
    2 * p.angle_fractions.iter().fold(1u64, |acc, &(_, q)| acc.lcm(&q))
}

/// A billiard table cut into simple pieces. Edges named in `interior` are
/// glued within the table; every other edge is a mirror.
#[derive(Clone, Debug)]
pub struct BilliardTable {
    pieces: Vec<Vec<PlanarVector>>,
    exact: Option<Vec<Vec<(ExactReal, ExactReal)>>>,
    interior: Vec<(EdgeRef, EdgeRef)>,
}

/// Element of the dihedral group of order `2n`: `flip = false` is the
/// rotation by `2πk/n`; `flip = true` is that rotation after the reflection
/// in the first mirror line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct GroupElement {
    flip: bool,
    k: usize,
}

impl BilliardTable {
    pub fn new(pieces: Vec<Vec<PlanarVector>>, interior: Vec<(EdgeRef, EdgeRef)>) -> Result<Self> {
        for (i, p) in pieces.iter().enumerate() {
            check_simple_ccw(p, &format!("table piece {i}"))?;
        }
        Ok(BilliardTable { pieces, exact: None, interior })
    }

    pub fn from_exact(pieces: &[Vec<(ExactReal, ExactReal)>], interior: Vec<(EdgeRef, EdgeRef)>) -> Result<Self> {
        let float = pieces
            .iter()
            .map(|p| p.iter().map(|(x, y)| PlanarVector::new(x.to_f64(), y.to_f64())).collect())
            .collect();
        let mut t = BilliardTable::new(float, interior)?;
        t.exact = Some(pieces.to_vec());
        Ok(t)
    }

    fn is_interior(&self, e: EdgeRef) -> bool {
        self.interior.iter().any(|&(a, b)| a == e || b == e)
    }

    fn mirrors(&self) -> Vec<EdgeRef> {
        let mut out = Vec::new();
        for (p, poly) in self.pieces.iter().enumerate() {
            for e in 0..poly.len() {
                if !self.is_interior((p, e)) {
                    out.push((p, e));
                }
            }
        }
        out
    }

    fn side_angle(&self, (p, e): EdgeRef) -> f64 {
        let poly = &self.pieces[p];
        let v = poly[(e + 1) % poly.len()] - poly[e];
        v.y.atan2(v.x).rem_euclid(PI)
    }

    /// Mirror directions as multiples of `π/n` relative to the first mirror:
    /// returns `(n, base angle, multiple per mirror)`.
    fn mirror_lattice(&self) -> Result<(usize, f64, Vec<usize>)> {
        let mirrors = self.mirrors();
        let first = *mirrors.first().ok_or_else(|| FlatError::InvalidParameter("table has no mirrors".into()))?;
        let base = self.side_angle(first);
        let offsets: Vec<f64> = mirrors.iter().map(|&m| (self.side_angle(m) - base).rem_euclid(PI) / PI).collect();
        for n in 1..=MAX_DENOMINATOR as usize {
            let mult: Vec<f64> = offsets.iter().map(|o| o * n as f64).collect();
            if mult.iter().all(|m| (m - m.round()).abs() < ANGLE_MATCH * n as f64) {
                return Ok((n, base, mult.iter().map(|m| (m.round() as usize) % n).collect()));
            }
        }
        Err(FlatError::InvalidParameter("side directions are not rational multiples of π".into()))
    }

    /// Number of reflected copies in the unfolding.
    pub fn group_order(&self) -> Result<usize> {
        Ok(2 * self.mirror_lattice()?.0)
    }

    /// Glue one copy of the table per element of the reflection group, each
    /// mirror side to the same side of its mirror image. Every table vertex is
    /// labelled so billiard corners become marked points.
    pub fn unfold(&self) -> Result<TranslationSurface> {
        let (n, base, mult) = self.mirror_lattice()?;
        let mirrors = self.mirrors();
        let elements: Vec<GroupElement> =
            [false, true].iter().flat_map(|&flip| (0..n).map(move |k| GroupElement { flip, k })).collect();
        let index = |g: GroupElement| g.flip as usize * n + g.k;
        let reflect = |g: GroupElement, m: usize| {
            if g.flip {
                GroupElement { flip: false, k: (g.k + n - m) % n }
            } else {
                GroupElement { flip: true, k: (g.k + m) % n }
            }
        };
        let matrix = |g: GroupElement| {
            let t = 2.0 * PI * g.k as f64 / n as f64;
            let (s, c) = t.sin_cos();
            if g.flip {
                let (s2, c2) = (2.0 * base).sin_cos();
                // rotation · reflection in the line at angle `base`
                [c * c2 - s * s2, c * s2 + s * c2, s * c2 + c * s2, s * s2 - c * c2]
            } else {
                [c, -s, s, c]
            }
        };
        let np = self.pieces.len();
        let edge_map = |g: GroupElement, len: usize, e: usize| if g.flip { (2 * len - 2 - e) % len } else { e };
        let vertex_order = |g: GroupElement, len: usize| -> Vec<usize> {
            if g.flip {
                (0..len).rev().collect()
            } else {
                (0..len).collect()
            }
        };

        let mut gluings = Vec::new();
        for &g in &elements {
            for &(a, b) in &self.interior {
                let ea = edge_map(g, self.pieces[a.0].len(), a.1);
                let eb = edge_map(g, self.pieces[b.0].len(), b.1);
                gluings.push(((index(g) * np + a.0, ea), (index(g) * np + b.0, eb)));
            }
            for (&(p, e), &m) in mirrors.iter().zip(&mult) {
                let h = reflect(g, m);
                if index(g) < index(h) {
                    let len = self.pieces[p].len();
                    gluings.push(((index(g) * np + p, edge_map(g, len, e)), (index(h) * np + p, edge_map(h, len, e))));
                }
            }
        }
        let labels: Vec<Vec<Option<String>>> = elements
            .iter()
            .flat_map(|_| self.pieces.iter().map(|p| vec![Some("corner".to_string()); p.len()]))
            .collect();

        let int_matrices: Option<Vec<[i64; 4]>> = elements
            .iter()
            .map(|&g| {
                let m = matrix(g);
                m.iter().all(|x| (x - x.round()).abs() < 1e-12).then(|| m.map(|x| x.round() as i64))
            })
            .collect();
        let surface = match (&self.exact, int_matrices) {
            (Some(exact), Some(ints)) => {
                let mut polys = Vec::new();
                for (gi, &g) in elements.iter().enumerate() {
                    let m = ints[gi].map(ExactReal::integer);
                    for piece in exact {
                        let image = |(x, y): &(ExactReal, ExactReal)| -> Result<(ExactReal, ExactReal)> {
                            Ok((m[0].mul(x)?.add(&m[1].mul(y)?)?, m[2].mul(x)?.add(&m[3].mul(y)?)?))
                        };
                        let order = vertex_order(g, piece.len());
                        polys.push(order.iter().map(|&i| image(&piece[i])).collect::<Result<Vec<_>>>()?);
                    }
                }
                TranslationSurface::from_exact(&polys, gluings, Some(labels))?
            }
            _ => {
                let mut polys = Vec::new();
                for &g in &elements {
                    let m = matrix(g);
                    for piece in &self.pieces {
                        let order = vertex_order(g, piece.len());
                        polys.push(
                            order
                                .iter()
                                .map(|&i| {
                                    let v = piece[i];
                                    PlanarVector::new(m[0] * v.x + m[1] * v.y, m[2] * v.x + m[3] * v.y)
                                })
                                .collect(),
                        );
                    }
                }
                TranslationSurface::from_parts(polys, gluings, Some(labels))
            }
        };
        surface.topology()?;
        Ok(surface)
    }
}

/// Gap statistics of generalized-diagonal directions of length at most `r`,
/// read off the unfolded surface.
pub fn diagonal_gap_report(p: &RationalPolygon, r: f64, limits: &EnumerationLimits) -> Result<GapReport> {
    let surface = p.unfold()?;
    let set = enumerate_saddle_connections(&surface, r, limits)?;
    gap_report(&direction_set(&set), r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(x: f64, y: f64) -> PlanarVector {
        PlanarVector::new(x, y)
    }

    #[test]
    fn group_orders() {
        let square = RationalPolygon::from_vertices(vec![pv(0.0, 0.0), pv(1.0, 0.0), pv(1.0, 1.0), pv(0.0, 1.0)]).unwrap();
        assert_eq!(reflection_group_order(&square), 4);
        let h = 3f64.sqrt() / 2.0;
        let eq = RationalPolygon::from_vertices(vec![pv(0.0, 0.0), pv(1.0, 0.0), pv(0.5, h)]).unwrap();
        assert_eq!(reflection_group_order(&eq), 6);
        let t = (PI / 8.0).tan();
        let tri = RationalPolygon::from_vertices(vec![pv(0.0, 0.0), pv(1.0, 0.0), pv(1.0, t)]).unwrap();
        assert_eq!(tri.angle_fractions(), &[(1, 8), (1, 2), (3, 8)]);
        assert_eq!(reflection_group_order(&tri), 16);
    }

    #[test]
    fn irrational_angle_rejected() {
        assert!(RationalPolygon::from_vertices(vec![pv(0.0, 0.0), pv(1.0, 0.0), pv(0.3, 0.7)]).is_err());
    }

    #[test]
    fn wrong_fractions_rejected() {
        let v = vec![pv(0.0, 0.0), pv(1.0, 0.0), pv(1.0, 1.0), pv(0.0, 1.0)];
        assert!(RationalPolygon::new(v.clone(), vec![(1, 2); 4]).is_ok());
        assert!(RationalPolygon::new(v.clone(), vec![(1, 3); 4]).is_err());
        assert!(RationalPolygon::new(v, vec![(2, 4); 4]).is_err());
    }
}

//! Unimodular planar lattices and marked tori.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::enumeration::within_radius;
use crate::error::{FlatError, Result};
use crate::geometry::exact::Arith;
use crate::geometry::vector::PlanarVector;

/// Tolerance on `det = 1`.
pub const DET_TOLERANCE: f64 = 1e-12;

/// A translate closer than this to the lattice counts as zero.
pub const TRANSLATE_TOLERANCE: f64 = 1e-9;

/// A covolume-1 lattice `b1·Z + b2·Z` with `cross(b1, b2) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    basis: [PlanarVector; 2],
}

impl Lattice {
    pub fn new(b1: PlanarVector, b2: PlanarVector) -> Result<Self> {
        let det = b1.cross(b2);
        if (det - 1.0).abs() > DET_TOLERANCE || !b1.is_finite() || !b2.is_finite() {
            return Err(FlatError::NotUnimodular { det });
        }
        Ok(Lattice { basis: [b1, b2] })
    }

    pub fn identity() -> Self {
        Lattice { basis: [PlanarVector::new(1.0, 0.0), PlanarVector::new(0.0, 1.0)] }
    }

    pub fn basis(&self) -> [PlanarVector; 2] {
        self.basis
    }

    /// The same lattice with a Lagrange-reduced basis.
    pub fn reduced(&self) -> Lattice {
        let [b1, b2] = gauss_reduce(self.basis[0], self.basis[1]);
        Lattice { basis: [b1, b2] }
    }

    /// Coordinates of `p` in the basis.
    pub fn coordinates(&self, p: PlanarVector) -> (f64, f64) {
        let [b1, b2] = self.basis;
        let det = b1.cross(b2);
        (p.cross(b2) / det, b1.cross(p) / det)
    }

    /// Representative of `p` in the fundamental parallelogram.
    pub fn reduce(&self, p: PlanarVector) -> PlanarVector {
        let (a, b) = self.coordinates(p);
        let [b1, b2] = self.basis;
        b1.scale(a - a.floor()) + b2.scale(b - b.floor())
    }

    /// Distance from `p` to the nearest lattice point, searched among the
    /// corners of the cell holding `p`.
    pub fn distance_to_lattice(&self, p: PlanarVector) -> f64 {
        let q = self.reduce(p);
        let [b1, b2] = self.basis;
        [PlanarVector::new(0.0, 0.0), b1, b2, b1 + b2, b1 - b2, b2 - b1]
            .iter()
            .map(|&c| (q - c).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Lagrange–Gauss reduction of a planar basis; keeps the orientation.
pub fn gauss_reduce(mut u: PlanarVector, mut v: PlanarVector) -> [PlanarVector; 2] {
    let sign = u.cross(v).signum();
    if u.norm_sq() > v.norm_sq() {
        std::mem::swap(&mut u, &mut v);
    }
    for _ in 0..200 {
        let m = (u.dot(v) / u.norm_sq()).round();
        v = v - u.scale(m);
        if v.norm_sq() >= u.norm_sq() {
            break;
        }
        std::mem::swap(&mut u, &mut v);
    }
    if u.cross(v).signum() != sign {
        v = -v;
    }
    [u, v]
}

/// A unimodular lattice with a marked translate `v ∉ Λ`, kept reduced into
/// the fundamental parallelogram.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkedTorus {
    lattice: Lattice,
    v: PlanarVector,
}

impl MarkedTorus {
    pub fn new(lattice: Lattice, v: PlanarVector) -> Result<Self> {
        if !v.is_finite() || lattice.distance_to_lattice(v) <= TRANSLATE_TOLERANCE {
            return Err(FlatError::InvalidParameter("marked point must not lie on the lattice".into()));
        }
        Ok(MarkedTorus { lattice, v: lattice.reduce(v) })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn translate(&self) -> PlanarVector {
        self.v
    }
}

/// Points `a·b1 + b·b2 + offset` of norm at most `r`, with `b1, b2` of
/// positive orientation.
pub fn translate_points<A: Arith>(arith: &A, b1: A::P, b2: A::P, offset: A::P, r: f64) -> Vec<A::P> {
    let (f1, f2, fo) = (arith.to_vector(b1), arith.to_vector(b2), arith.to_vector(offset));
    let det = f1.cross(f2).abs();
    let reach = r * (1.0 + 1e-9) + fo.norm();
    let amax = (reach * f2.norm() / det).ceil() as i64 + 1;
    let bmax = (reach * f1.norm() / det).ceil() as i64 + 1;
    let mut out = Vec::new();
    for a in -amax..=amax {
        let row = arith.add(arith.scale_int(b1, a), offset);
        for b in -bmax..=bmax {
            let p = arith.add(row, arith.scale_int(b2, b));
            let f = arith.to_vector(p);
            if f.norm_sq() > 0.0 && within_radius(f, r) {
                out.push(p);
            }
        }
    }
    out
}

/// Primitive vectors `basis·(p, q)`, `gcd(p, q) = 1`, of norm at most `r`.
pub fn primitive_vectors(l: &Lattice, r: f64) -> Vec<PlanarVector> {
    let red = l.reduced();
    let [b1, b2] = red.basis();
    let (amax, bmax) = ((r * b2.norm()).ceil() as i64 + 1, (r * b1.norm()).ceil() as i64 + 1);
    let mut out = Vec::new();
    for a in -amax..=amax {
        for b in -bmax..=bmax {
            if a.gcd(&b) != 1 {
                continue;
            }
            let p = b1.scale(a as f64) + b2.scale(b as f64);
            if within_radius(p, r) {
                out.push(p);
            }
        }
    }
    out.sort_by(|x, y| x.angle().rem_euclid(std::f64::consts::TAU).total_cmp(&y.angle().rem_euclid(std::f64::consts::TAU)));
    out
}

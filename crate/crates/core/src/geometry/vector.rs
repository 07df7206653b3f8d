use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{FlatError, Result};

/// A vector in the flat plane (holonomy vectors, polygon vertices, edge vectors).
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct PlanarVector {
    pub x: f64,
    pub y: f64,
}

impl PlanarVector {
    pub const ZERO: PlanarVector = PlanarVector { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        PlanarVector { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        PlanarVector::new(r * theta.cos(), r * theta.sin())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Argument in `[0, 2π)`. The zero vector maps to 0.
    pub fn angle(self) -> f64 {
        normalize_angle(self.y.atan2(self.x))
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn scale(self, s: f64) -> Self {
        PlanarVector::new(self.x * s, self.y * s)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Self {
        PlanarVector::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Signed angle from `self` to `other`, in `(-π, π]`.
    pub fn angle_to(self, other: Self) -> f64 {
        self.cross(other).atan2(self.dot(other))
    }
}

impl Add for PlanarVector {
    type Output = PlanarVector;
    fn add(self, o: Self) -> Self {
        PlanarVector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for PlanarVector {
    type Output = PlanarVector;
    fn sub(self, o: Self) -> Self {
        PlanarVector::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for PlanarVector {
    type Output = PlanarVector;
    fn neg(self) -> Self {
        PlanarVector::new(-self.x, -self.y)
    }
}

impl Mul<PlanarVector> for f64 {
    type Output = PlanarVector;
    fn mul(self, v: PlanarVector) -> PlanarVector {
        v.scale(self)
    }
}

/// Reduce an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Circular distance between two angles, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TAU - d)
}

pub const DET_TOLERANCE: f64 = 1e-12;

/// An element of SL(2,R), acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2Matrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Sl2Matrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite())
            || (det - 1.0).abs() > DET_TOLERANCE
        {
            return Err(FlatError::NotUnimodular { det });
        }
        Ok(Sl2Matrix { a, b, c, d })
    }

    pub const fn identity() -> Self {
        Sl2Matrix { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// The geodesic flow `diag(e^{-t/2}, e^{t/2})`.
    pub fn g_t(t: f64) -> Self {
        let s = (-t / 2.0).exp();
        Sl2Matrix { a: s, b: 0.0, c: 0.0, d: 1.0 / s }
    }

    /// Counterclockwise rotation by `theta`.
    pub fn r_theta(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Sl2Matrix { a: c, b: -s, c: s, d: c }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, v: PlanarVector) -> PlanarVector {
        PlanarVector::new(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }

    pub fn inverse(&self) -> Self {
        Sl2Matrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn compose(&self, o: &Sl2Matrix) -> Self {
        Sl2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        let f = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        let det = self.det();
        let disc = (f * f - 4.0 * det * det).max(0.0);
        ((f + disc.sqrt()) / 2.0).sqrt()
    }

    /// Integer entries, if every entry is an exact integer.
    pub fn integer_entries(&self) -> Option<[i64; 4]> {
        let mut out = [0i64; 4];
        for (o, v) in out.iter_mut().zip(self.entries()) {
            if v.fract() != 0.0 || v.abs() > 1e12 {
                return None;
            }
            *o = v as i64;
        }
        Some(out)
    }
}

impl Mul for Sl2Matrix {
    type Output = Sl2Matrix;
    fn mul(self, o: Sl2Matrix) -> Sl2Matrix {
        self.compose(&o)
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{FlatError, Result};
use crate::geometry::vector::{circular_distance, PlanarVector};

/// A planar region with closed boundary.
pub trait Region: Sync {
    fn contains(&self, v: PlanarVector) -> bool;
    /// Radius of a disk about the origin containing the region;
    /// `f64::INFINITY` when unbounded.
    fn bounding_radius(&self) -> f64;
    fn area(&self) -> f64;
}

/// The trapezoid with vertices `(c, ±cσ)` and `(1, ±σ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trapezoid {
    pub c: f64,
    pub sigma: f64,
}

impl Trapezoid {
    pub fn new(c: f64, sigma: f64) -> Result<Self> {
        if !((0.0..1.0).contains(&c) && sigma > 0.0 && sigma.is_finite()) {
            return Err(FlatError::InvalidParameter(format!("trapezoid needs 0 <= c < 1, sigma > 0; got c={c}, sigma={sigma}")));
        }
        Ok(Trapezoid { c, sigma })
    }
}

impl Region for Trapezoid {
    fn contains(&self, v: PlanarVector) -> bool {
        v.x >= self.c && v.x <= 1.0 && v.y.abs() <= self.sigma * v.x
    }

    fn bounding_radius(&self) -> f64 {
        1.0f64.hypot(self.sigma)
    }

    fn area(&self) -> f64 {
        self.sigma * (1.0 - self.c * self.c)
    }
}

/// `{v : cR ≤ |v| ≤ R, |arg v − θ| ≤ σ/R²}` with circular angle distance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnularWedge {
    pub theta: f64,
    pub r: f64,
    pub c: f64,
    pub sigma: f64,
}

impl AnnularWedge {
    pub fn new(theta: f64, r: f64, c: f64, sigma: f64) -> Result<Self> {
        if !((0.0..1.0).contains(&c) && sigma > 0.0 && r > 0.0 && theta.is_finite() && r.is_finite()) {
            return Err(FlatError::InvalidParameter(format!(
                "annular wedge needs R > 0, 0 <= c < 1, sigma > 0; got R={r}, c={c}, sigma={sigma}"
            )));
        }
        Ok(AnnularWedge { theta, r, c, sigma })
    }

    pub fn half_width(&self) -> f64 {
        self.sigma / (self.r * self.r)
    }
}

impl Region for AnnularWedge {
    fn contains(&self, v: PlanarVector) -> bool {
        let n = v.norm();
        n > 0.0 && n >= self.c * self.r && n <= self.r && circular_distance(v.angle(), self.theta) <= self.half_width()
    }

    fn bounding_radius(&self) -> f64 {
        self.r
    }

    fn area(&self) -> f64 {
        self.half_width() * self.r * self.r * (1.0 - self.c * self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub r: f64,
}

impl Region for Disk {
    fn contains(&self, v: PlanarVector) -> bool {
        v.norm() <= self.r
    }

    fn bounding_radius(&self) -> f64 {
        self.r
    }

    fn area(&self) -> f64 {
        std::f64::consts::PI * self.r * self.r
    }
}

/// `{v : inner ≤ |v| ≤ outer}`, optionally restricted to a sector of
/// angles `[from, from + width]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Annulus {
    pub inner: f64,
    pub outer: f64,
    pub sector: Option<(f64, f64)>,
}

impl Annulus {
    pub fn new(inner: f64, outer: f64) -> Self {
        Annulus { inner, outer, sector: None }
    }

    pub fn sector(inner: f64, outer: f64, from: f64, width: f64) -> Self {
        Annulus { inner, outer, sector: Some((from, width)) }
    }
}

impl Region for Annulus {
    fn contains(&self, v: PlanarVector) -> bool {
        let n = v.norm();
        if n < self.inner || n > self.outer {
            return false;
        }
        match self.sector {
            None => true,
            Some((from, width)) => (v.angle() - from).rem_euclid(std::f64::consts::TAU) <= width,
        }
    }

    fn bounding_radius(&self) -> f64 {
        self.outer
    }

    fn area(&self) -> f64 {
        let full = std::f64::consts::PI * (self.outer * self.outer - self.inner * self.inner);
        match self.sector {
            None => full,
            Some((_, w)) => full * w / std::f64::consts::TAU,
        }
    }
}

/// A region given by a membership predicate and a declared bounding radius.
pub struct PredicateRegion<F> {
    pub predicate: F,
    pub radius: f64,
    pub area: f64,
}

impl<F: Fn(PlanarVector) -> bool + Sync> Region for PredicateRegion<F> {
    fn contains(&self, v: PlanarVector) -> bool {
        (self.predicate)(v)
    }

    fn bounding_radius(&self) -> f64 {
        self.radius
    }

    fn area(&self) -> f64 {
        self.area
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_vertices_are_inside() {
        let t = Trapezoid::new(0.25, 0.5).unwrap();
        for v in [(0.25, 0.125), (0.25, -0.125), (1.0, 0.5), (1.0, -0.5)] {
            assert!(t.contains(PlanarVector::new(v.0, v.1)));
        }
        assert!(!t.contains(PlanarVector::new(0.2, 0.0)));
        let tri = Trapezoid::new(0.0, 1.0).unwrap();
        assert!(tri.contains(PlanarVector::new(1.0, 0.0)));
    }

    #[test]
    fn wedge_wraps_around_zero() {
        let w = AnnularWedge::new(0.0, 10.0, 0.0, 1.0).unwrap();
        assert!(w.contains(PlanarVector::from_polar(5.0, -0.009)));
        assert!(!w.contains(PlanarVector::from_polar(5.0, 0.011)));
        assert!((w.area() - 1.0).abs() < 1e-15);
    }
}

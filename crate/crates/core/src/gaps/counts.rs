use serde::Serialize;

use super::regions::{AnnularWedge, Region, Trapezoid};
use crate::enumeration::HolonomySet;
use crate::error::{FlatError, Result};
use crate::geometry::vector::{PlanarVector, Sl2Matrix};

/// `Σ_{v ∈ Λ} 1_region(v)` over distinct holonomy vectors.
pub fn siegel_veech_transform(set: &HolonomySet, region: &dyn Region) -> Result<usize> {
    let reach = region.bounding_radius();
    if !reach.is_finite() {
        return Err(FlatError::UnboundedRegion);
    }
    if reach > set.radius() * (1.0 + 1e-12) {
        return Err(FlatError::InvalidParameter(format!(
            "region reaches radius {reach} beyond the enumerated radius {}",
            set.radius()
        )));
    }
    Ok(set.distinct_vectors().into_iter().filter(|&v| region.contains(v)).count())
}

/// Number of holonomy vectors in the thinning annular wedge.
pub fn wedge_count(set: &HolonomySet, w: &AnnularWedge) -> usize {
    set.distinct_vectors().into_iter().filter(|&v| w.contains(v)).count()
}

/// Number of holonomy vectors in the trapezoid (closed boundary).
pub fn trapezoid_count(set: &HolonomySet, t: &Trapezoid) -> usize {
    set.distinct_vectors().into_iter().filter(|&v| t.contains(v)).count()
}

/// `g_t r_{−θ}` with `t = 2 log R`, the map sending the wedge around `θ` at
/// scale `R` close to the fixed trapezoid.
pub fn cone_map(theta: f64, r: f64) -> Sl2Matrix {
    Sl2Matrix::g_t(2.0 * r.ln()).compose(&Sl2Matrix::r_theta(-theta))
}

/// Comparison between the wedge count and the count of the normalized set in
/// the trapezoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConeDefect {
    pub wedge_count: usize,
    pub trapezoid_count: usize,
    /// Points of the symmetric difference lying only in the wedge.
    pub only_in_wedge: usize,
    /// Points (preimages) lying only in the normalized trapezoid.
    pub only_in_trapezoid: usize,
}

impl ConeDefect {
    /// `| |Λ ∩ A| − |g_t r_{−θ} Λ ∩ T| |`.
    pub fn defect(&self) -> usize {
        self.wedge_count.abs_diff(self.trapezoid_count)
    }

    /// Size of the symmetric difference `E_t` seen by the set.
    pub fn symmetric_difference(&self) -> usize {
        self.only_in_wedge + self.only_in_trapezoid
    }

    /// The signed identity `|A| − |T| = #(A∖T) − #(T∖A)` and the bound
    /// `defect ≤ #E_t`.
    pub fn is_certified(&self) -> bool {
        self.wedge_count as i64 - self.trapezoid_count as i64 == self.only_in_wedge as i64 - self.only_in_trapezoid as i64
            && self.defect() <= self.symmetric_difference()
    }
}

/// Membership of `v` in the wedge and in the pulled-back trapezoid.
pub fn cone_memberships(v: PlanarVector, w: &AnnularWedge, m: &Sl2Matrix, t: &Trapezoid) -> (bool, bool) {
    (w.contains(v), t.contains(m.apply(v)))
}

/// Requires the set to be complete slightly beyond `R`: trapezoid
/// preimages reach norm `R·sqrt(1 + σ²/R⁴)`.
pub fn cone_approximation_defect(set: &HolonomySet, theta: f64, r: f64, sigma: f64, c: f64) -> Result<ConeDefect> {
    let w = AnnularWedge::new(theta, r, c, sigma)?;
    let t = Trapezoid::new(c, sigma)?;
    let needed = r * (1.0 + (sigma / (r * r)).powi(2)).sqrt();
    if set.radius() < needed * (1.0 - 1e-12) {
        return Err(FlatError::InvalidParameter(format!(
            "holonomy set radius {} is below the required {needed}",
            set.radius()
        )));
    }
    let m = cone_map(theta, r);
    let mut out = ConeDefect { wedge_count: 0, trapezoid_count: 0, only_in_wedge: 0, only_in_trapezoid: 0 };
    for v in set.distinct_vectors() {
        let (a, b) = cone_memberships(v, &w, &m, &t);
        out.wedge_count += a as usize;
        out.trapezoid_count += b as usize;
        out.only_in_wedge += (a && !b) as usize;
        out.only_in_trapezoid += (b && !a) as usize;
    }
    Ok(out)
}

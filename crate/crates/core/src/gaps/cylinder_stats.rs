//! Statistics of cylinder directions: the nearby-direction overlap check
//! and large gaps between directions carrying most of the area.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::enumeration::develop::paths_meet;
use crate::enumeration::{Cylinder, CylinderSet};
use crate::geometry::vector::circular_distance;

/// Two cylinder directions closer than this are treated as equal.
const SAME_DIRECTION: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowViolation {
    pub cylinder: usize,
    pub other: usize,
    pub angle_gap: f64,
    pub bound: f64,
}

/// Angular window `min(a/(2LR), π/3)` of a cylinder of length `L` and
/// area `a`: half its width over `R`.
pub fn flow_bound(length: f64, area: f64, r: f64) -> f64 {
    (area / (2.0 * length * r)).min(PI / 3.0)
}

/// The window `min(1/(2LRa), π/3)` with `L, R, a` taken on the surface
/// rescaled to unit area.
pub fn flow_bound_reciprocal(length: f64, area: f64, r: f64, surface_area: f64) -> f64 {
    let (l, rr, a) = (length / surface_area.sqrt(), r / surface_area.sqrt(), area / surface_area);
    (1.0 / (2.0 * l * rr * a)).min(PI / 3.0)
}

/// Pairs of cylinders in distinct directions closer than the window of the
/// first one that share a point on the surface. Expected empty.
pub fn cyl_flow_check(set: &CylinderSet, r: f64) -> Vec<FlowViolation> {
    flow_check_with(set, r, |c| flow_bound(c.length(), c.area, r))
}

/// The overlap check with a caller-chosen window per cylinder.
pub fn flow_check_with(set: &CylinderSet, r: f64, window: impl Fn(&Cylinder) -> f64) -> Vec<FlowViolation> {
    let cyls = &set.cylinders;
    let mut order: Vec<usize> = (0..cyls.len()).collect();
    order.sort_by(|&a, &b| cyls[a].direction.total_cmp(&cyls[b].direction));
    let angles: Vec<f64> = order.iter().map(|&i| cyls[i].direction).collect();
    let mut curves: Vec<Option<Vec<_>>> = vec![None; cyls.len()];
    let mut out = Vec::new();
    for (i, c) in cyls.iter().enumerate() {
        let bound = window(c);
        let mut candidates = Vec::new();
        for shift in [-TAU, 0.0, TAU] {
            let lo = angles.partition_point(|&a| a + shift < c.direction - bound);
            let hi = angles.partition_point(|&a| a + shift <= c.direction + bound);
            candidates.extend(order[lo..hi].iter().copied());
        }
        candidates.sort_unstable();
        candidates.dedup();
        for j in candidates {
            let o = &cyls[j];
            let gap = circular_distance(c.direction, o.direction);
            if j == i || gap <= SAME_DIRECTION || gap >= bound || o.length() >= r {
                continue;
            }
            if curves[i].is_none() {
                curves[i] = Some(set.core_curve(i));
            }
            if curves[j].is_none() {
                curves[j] = Some(set.core_curve(j));
            }
            let (a, b) = (curves[i].as_ref().expect("traced"), curves[j].as_ref().expect("traced"));
            if paths_meet(a, b) {
                out.push(FlowViolation { cylinder: i, other: j, angle_gap: gap, bound });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaRow {
    pub sigma: f64,
    /// Fraction of consecutive gaps `θ_{i+1} − θ_i ≥ σ/R²`.
    pub fraction: f64,
    /// `σ² · fraction`.
    pub scaled: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubstantialGaps {
    pub radius: f64,
    pub threshold: f64,
    /// Directions whose cylinders of length `≤ R` cover at least the
    /// threshold fraction of the area, sorted.
    pub directions: Vec<f64>,
    pub gaps: Vec<f64>,
    pub rows: Vec<SigmaRow>,
}

/// Gaps between directions whose cylinders of length at most `r` fill at
/// least `threshold` of the surface, and for each `σ` the fraction of gaps
/// of size at least `σ/R²`.
pub fn substantial_direction_gaps(set: &CylinderSet, r: f64, threshold: f64, sigmas: &[f64]) -> SubstantialGaps {
    let mut cyls: Vec<(f64, f64)> = set
        .cylinders
        .iter()
        .filter(|c| c.length() <= r)
        .map(|c| (c.direction, c.area / set.surface_area))
        .collect();
    cyls.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut grouped: Vec<(f64, f64)> = Vec::new();
    for (dir, frac) in cyls {
        match grouped.last_mut() {
            Some(last) if dir - last.0 <= SAME_DIRECTION => last.1 += frac,
            _ => grouped.push((dir, frac)),
        }
    }
    if grouped.len() > 1 {
        let last = grouped[grouped.len() - 1];
        if TAU - last.0 + grouped[0].0 <= SAME_DIRECTION {
            grouped[0].1 += last.1;
            grouped.pop();
        }
    }
    let directions: Vec<f64> = grouped.iter().filter(|g| g.1 >= threshold - 1e-12).map(|g| g.0).collect();
    let n = directions.len();
    let gaps: Vec<f64> = match n {
        0 => Vec::new(),
        1 => vec![TAU],
        _ => (0..n).map(|i| if i + 1 < n { directions[i + 1] - directions[i] } else { TAU - directions[i] + directions[0] }).collect(),
    };
    let rows = if gaps.is_empty() {
        Vec::new()
    } else {
        sigmas
            .iter()
            .map(|&sigma| {
                let fraction = gaps.iter().filter(|&&g| g >= sigma / (r * r)).count() as f64 / gaps.len() as f64;
                SigmaRow { sigma, fraction, scaled: sigma * sigma * fraction }
            })
            .collect()
    };
    SubstantialGaps { radius: r, threshold, directions, gaps, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_cylinders, EnumerationLimits};
    use crate::geometry::builders::build_square_torus;

    #[test]
    fn torus_window_matches_farey_neighbour() {
        // the (1,0) cylinder: nearest other direction is arctan(1/⌊R⌋)
        let r = 7.5;
        assert!((1.0f64 / 7.0).atan() > flow_bound(1.0, 1.0, r));
    }

    #[test]
    fn torus_has_no_violations_and_all_directions_substantial() {
        let set = enumerate_cylinders(&build_square_torus(), 10.0, &EnumerationLimits::default()).unwrap();
        assert!(cyl_flow_check(&set, 10.0).is_empty());
        let table = substantial_direction_gaps(&set, 10.0, 0.6, &[1.0]);
        assert_eq!(table.directions.len(), set.len());
        assert!((table.gaps.iter().sum::<f64>() - TAU).abs() < 1e-9);
    }

    #[test]
    fn threshold_above_one_is_empty() {
        let set = enumerate_cylinders(&build_square_torus(), 3.0, &EnumerationLimits::default()).unwrap();
        let table = substantial_direction_gaps(&set, 3.0, 1.5, &[1.0]);
        assert!(table.directions.is_empty());
        assert!(table.rows.is_empty());
    }
}

use std::f64::consts::TAU;

use serde::Serialize;

use crate::enumeration::DirectionSet;
use crate::error::{FlatError, Result};

pub const DEFAULT_EPSILONS: [f64; 5] = [0.01, 0.05, 0.1, 0.5, 1.0];
pub const DEFAULT_SIGMAS: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub radius: f64,
    /// Distinct directions `Ñ`.
    pub distinct: usize,
    /// Vectors with multiplicity `N`.
    pub total: usize,
    /// `θ_{i+1} − θ_i`, the last one wrapping around to `θ_1 + 2π`.
    pub gaps: Vec<f64>,
    /// Smallest gap `γ(R)`.
    pub gamma: f64,
    /// `R² γ(R)`.
    pub scaled_gamma: f64,
    /// `R² · gap` for every gap.
    pub rescaled: Vec<f64>,
    /// `(ε, fraction of gaps ≤ ε/R²)` over the default ε grid.
    pub small_gap_fractions: Vec<(f64, f64)>,
}

impl GapReport {
    pub fn small_gap_fraction(&self, eps: f64) -> f64 {
        let cut = eps / (self.radius * self.radius);
        self.gaps.iter().filter(|&&g| g <= cut).count() as f64 / self.gaps.len() as f64
    }
}

pub fn gap_report(theta: &DirectionSet, r: f64) -> Result<GapReport> {
    let dirs = theta.directions();
    if dirs.is_empty() {
        return Err(FlatError::InvalidParameter("gap report of an empty direction set".into()));
    }
    if r.is_nan() || r <= 0.0 {
        return Err(FlatError::InvalidParameter(format!("radius {r} must be positive")));
    }
    let n = dirs.len();
    let gaps: Vec<f64> = if n == 1 {
        vec![TAU]
    } else {
        (0..n)
            .map(|i| {
                // measured between representatives, which keeps tiny gaps accurate
                let (a, b) = (dirs[i].representative, dirs[(i + 1) % n].representative);
                let g = a.angle_to(b);
                if g <= 0.0 {
                    g + TAU
                } else {
                    g
                }
            })
            .collect()
    };
    let gamma = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let r2 = r * r;
    let mut report = GapReport {
        radius: r,
        distinct: n,
        total: theta.total_count(),
        rescaled: gaps.iter().map(|g| g * r2).collect(),
        gaps,
        gamma,
        scaled_gamma: gamma * r2,
        small_gap_fractions: Vec::new(),
    };
    report.small_gap_fractions = DEFAULT_EPSILONS.iter().map(|&e| (e, report.small_gap_fraction(e))).collect();
    Ok(report)
}

/// Right-continuous empirical CDF of the rescaled gaps at each grid point.
pub fn rescaled_gap_cdf(report: &GapReport, grid: &[f64]) -> Vec<f64> {
    let mut sorted = report.rescaled.clone();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    grid.iter().map(|&x| sorted.partition_point(|&g| g <= x) as f64 / n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{direction_set, HolonomySet};
    use crate::geometry::vector::PlanarVector;
    use std::f64::consts::FRAC_PI_2;

    fn set(angles: &[f64]) -> DirectionSet {
        direction_set(&HolonomySet::from_vectors(angles.iter().map(|&a| PlanarVector::from_polar(1.0, a)), 1.0))
    }

    #[test]
    fn quarter_turns() {
        let r = gap_report(&set(&[0.0, FRAC_PI_2, 2.0 * FRAC_PI_2, 3.0 * FRAC_PI_2]), 1.0).unwrap();
        for g in &r.gaps {
            assert!((g - FRAC_PI_2).abs() < 1e-15);
        }
        assert!((r.gamma - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn single_direction() {
        let r = gap_report(&set(&[1.0]), 3.0).unwrap();
        assert_eq!(r.gaps, vec![TAU]);
    }

    #[test]
    fn cdf_of_equal_gaps_is_one_step() {
        let r = gap_report(&set(&[0.0, FRAC_PI_2, 2.0 * FRAC_PI_2, 3.0 * FRAC_PI_2]), 1.0).unwrap();
        assert_eq!(rescaled_gap_cdf(&r, &[1.0, 1.6, f64::INFINITY]), vec![0.0, 1.0, 1.0]);
    }
}

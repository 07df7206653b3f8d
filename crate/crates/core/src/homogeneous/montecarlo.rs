//! Monte-Carlo estimates over Haar-random marked tori.

use rayon::prelude::*;
use serde::Serialize;

use super::haar::{sample_haar_with, trial_rng, truncation_mass, DEFAULT_Y_MAX};
use super::lattice::primitive_vectors;
use super::translates::sc_set_scaled;
use crate::error::{FlatError, Result};
use crate::gaps::regions::{Region, Trapezoid};

/// One `P(#(Λ ∩ T(c,σ)) = k)` estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PkEstimate {
    pub k: usize,
    pub c: f64,
    pub sigma: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
    pub truncation_mass: f64,
}

/// Counts of trials by the number of points in the region.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountDistribution {
    pub c: f64,
    pub sigma: f64,
    pub covolume: f64,
    pub trials: u64,
    pub seed: u64,
    pub y_max: f64,
    pub truncation_mass: f64,
    /// `counts[k]` trials had exactly `k` points.
    pub counts: Vec<u64>,
}

impl CountDistribution {
    pub fn estimate(&self, k: usize) -> PkEstimate {
        let n = self.trials as f64;
        let p = self.counts.get(k).copied().unwrap_or(0) as f64 / n;
        PkEstimate {
            k,
            c: self.c,
            sigma: self.sigma,
            estimate: p,
            stderr: (p * (1.0 - p) / n).sqrt(),
            trials: self.trials,
            seed: self.seed,
            truncation_mass: self.truncation_mass,
        }
    }

    /// Mean number of points per trial.
    pub fn mean(&self) -> f64 {
        let total: f64 = self.counts.iter().enumerate().map(|(k, &m)| k as f64 * m as f64).sum();
        total / self.trials as f64
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(FlatError::InvalidParameter("trials must be at least 1".into()));
    }
    Ok(())
}

/// Distribution of `#(Λ^sc ∩ T(c,σ))` over marked tori of the given
/// covolume.
pub fn count_distribution(c: f64, sigma: f64, trials: u64, seed: u64, covolume: f64, y_max: f64) -> Result<CountDistribution> {
    check_trials(trials)?;
    if !(covolume > 0.0 && covolume.is_finite()) {
        return Err(FlatError::InvalidParameter(format!("covolume {covolume} must be positive")));
    }
    let region = Trapezoid::new(c, sigma)?;
    let reach = region.bounding_radius();
    let scale = covolume.sqrt();
    let per_trial: Vec<usize> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<usize> {
            let mut rng = trial_rng(seed, t);
            let mt = sample_haar_with(&mut rng, y_max)?.torus;
            let set = sc_set_scaled(&mt, reach, scale);
            Ok(set.distinct_vectors().into_iter().filter(|&v| region.contains(v)).count())
        })
        .collect::<Result<_>>()?;
    let mut counts = vec![0u64; per_trial.iter().copied().max().unwrap_or(0) + 1];
    for k in per_trial {
        counts[k] += 1;
    }
    Ok(CountDistribution { c, sigma, covolume, trials, seed, y_max, truncation_mass: truncation_mass(y_max), counts })
}

/// `P(#(Λ^sc ∩ T(c,σ)) = k)` for covolume-1 marked tori.
pub fn estimate_pk(c: f64, sigma: f64, k: usize, trials: u64, seed: u64) -> Result<PkEstimate> {
    Ok(count_distribution(c, sigma, trials, seed, 1.0, DEFAULT_Y_MAX)?.estimate(k))
}

/// Which point set a Siegel–Veech average counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointSet {
    /// Primitive vectors of the lattice.
    Primitive,
    /// Saddle-connection holonomies of the double cover.
    SaddleConnections,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SiegelRatio {
    pub mean: f64,
    pub stderr: f64,
    pub area: f64,
    pub ratio: f64,
    pub ratio_stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Mean number of points in `region` over covolume-1 marked tori, divided
/// by its area.
pub fn siegel_consistency(region: &dyn Region, set: PointSet, trials: u64, seed: u64) -> Result<SiegelRatio> {
    check_trials(trials)?;
    let area = region.area();
    if !(area > 0.0 && area.is_finite()) {
        return Err(FlatError::UnboundedRegion);
    }
    let reach = region.bounding_radius();
    let counts: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<f64> {
            let mut rng = trial_rng(seed, t);
            let mt = sample_haar_with(&mut rng, DEFAULT_Y_MAX)?.torus;
            let n = match set {
                PointSet::Primitive => primitive_vectors(mt.lattice(), reach).into_iter().filter(|&v| region.contains(v)).count(),
                PointSet::SaddleConnections => {
                    sc_set_scaled(&mt, reach, 1.0).distinct_vectors().into_iter().filter(|&v| region.contains(v)).count()
                }
            };
            Ok(n as f64)
        })
        .collect::<Result<_>>()?;
    let n = trials as f64;
    let mean = counts.iter().sum::<f64>() / n;
    let var = if trials > 1 { counts.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    let stderr = (var / n).sqrt();
    Ok(SiegelRatio { mean, stderr, area, ratio: mean / area, ratio_stderr: stderr / area, trials, seed })
}

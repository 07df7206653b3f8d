//! Haar-random marked tori.
//!
//! The shape `x + iy` is drawn from the modular fundamental domain
//! `{|x| ≤ 1/2, x² + y² ≥ 1}` with density `∝ dx dy / y²`, truncated at
//! `y ≤ y_max`, then the lattice is rotated uniformly and the marked point
//! is uniform on the torus.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::lattice::{Lattice, MarkedTorus, TRANSLATE_TOLERANCE};
use crate::error::Result;
use crate::geometry::vector::{PlanarVector, Sl2Matrix};

pub const DEFAULT_Y_MAX: f64 = 1e6;

/// Lowest point of the fundamental domain.
const Y_MIN: f64 = 0.866_025_403_784_438_6;

/// Haar mass of the fundamental domain, `π/3`.
pub const DOMAIN_MASS: f64 = PI / 3.0;

/// Fraction of the Haar mass above `y_max`.
pub fn truncation_mass(y_max: f64) -> f64 {
    (1.0 / y_max) / DOMAIN_MASS
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HaarSample {
    pub x: f64,
    pub y: f64,
    pub rotation: f64,
    pub torus: MarkedTorus,
}

/// Draw `(x, y)` from the truncated fundamental domain.
pub fn sample_shape<R: Rng>(rng: &mut R, y_max: f64) -> (f64, f64) {
    let (lo, hi) = (1.0 / Y_MIN, 1.0 / y_max);
    loop {
        let u: f64 = rng.gen();
        let y = 1.0 / (lo - u * (lo - hi));
        let x: f64 = rng.gen::<f64>() - 0.5;
        if x * x + y * y >= 1.0 {
            return (x, y);
        }
    }
}

/// The unimodular lattice with shape `x + iy`, rotated by `phi`.
pub fn lattice_from_shape(x: f64, y: f64, phi: f64) -> Result<Lattice> {
    let s = 1.0 / y.sqrt();
    let rot = Sl2Matrix::r_theta(phi);
    Lattice::new(rot.apply(PlanarVector::new(s, 0.0)), rot.apply(PlanarVector::new(s * x, s * y)))
}

pub fn sample_haar_with<R: Rng>(rng: &mut R, y_max: f64) -> Result<HaarSample> {
    let (x, y) = sample_shape(rng, y_max);
    let rotation = rng.gen::<f64>() * TAU;
    let lattice = lattice_from_shape(x, y, rotation)?;
    let [b1, b2] = lattice.basis();
    loop {
        let (a, b): (f64, f64) = (rng.gen(), rng.gen());
        let v = b1.scale(a) + b2.scale(b);
        if lattice.distance_to_lattice(v) > TRANSLATE_TOLERANCE {
            return Ok(HaarSample { x, y, rotation, torus: MarkedTorus::new(lattice, v)? });
        }
    }
}

/// A Haar-random marked torus from a seed.
pub fn sample_haar(seed: u64) -> Result<MarkedTorus> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_haar_with(&mut rng, DEFAULT_Y_MAX)?.torus)
}

/// The generator for trial `trial` under master seed `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

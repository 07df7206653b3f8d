pub mod haar;
pub mod lattice;
pub mod montecarlo;
pub mod translates;

pub use haar::{sample_haar, sample_haar_with, trial_rng, truncation_mass, HaarSample, DEFAULT_Y_MAX};
pub use lattice::{gauss_reduce, primitive_vectors, translate_points, Lattice, MarkedTorus};
pub use montecarlo::{count_distribution, estimate_pk, siegel_consistency, CountDistribution, PkEstimate, PointSet, SiegelRatio};
pub use translates::{covering_torus, first_hits, sc_set, sc_set_exact, sc_set_scaled, CoveringTorus};

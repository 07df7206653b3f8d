//! Saddle connections, cylinders and direction-gap statistics on
//! translation surfaces, with the marked-torus model used to predict
//! limiting wedge-count distributions for barrier billiards.

pub mod billiards;
pub mod enumeration;
pub mod error;
pub mod gaps;
pub mod geometry;
pub mod homogeneous;

pub use error::{FlatError, Result};

/// Library version, embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

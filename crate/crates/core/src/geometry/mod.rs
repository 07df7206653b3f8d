pub mod builders;
pub mod exact;
pub mod io;
pub mod surface;
pub mod triangulation;
pub mod vector;

pub use builders::{
    barrier_table, build_barrier_surface, build_barrier_surface_exact, build_glued_torus, build_regular_octagon,
    build_square_torus,
};
pub use exact::{ExactReal, ExactVector, QuadField};
pub use surface::{validate_surface, PointKind, StratumSignature, TranslationSurface, ValidationReport};
pub use vector::{PlanarVector, Sl2Matrix};

pub mod counts;
pub mod cylinder_stats;
pub mod regions;
pub mod report;
pub mod sweep;

pub use counts::{cone_approximation_defect, cone_map, siegel_veech_transform, trapezoid_count, wedge_count, ConeDefect};
pub use cylinder_stats::{cyl_flow_check, flow_bound, flow_bound_reciprocal, flow_check_with, substantial_direction_gaps, FlowViolation, SubstantialGaps};
pub use regions::{Annulus, AnnularWedge, Disk, PredicateRegion, Region, Trapezoid};
pub use report::{gap_report, rescaled_gap_cdf, GapReport, DEFAULT_EPSILONS, DEFAULT_SIGMAS};
pub use sweep::{level_measure_of_arcs, theta_level_measure, LevelMeasure};

//! Numerical verification labs for the path-isometry circle of ideas:
//! induced path metrics on point clouds, tubular-neighborhood length
//! control, path-isometry defects, the linear Finsler obstruction, and the
//! Heisenberg central-collapse ratio.

pub mod cloud;
pub mod collapse;
pub mod defect;
pub mod error;
pub mod finsler;
pub mod tube;

pub use cloud::{circle_cloud, induced_path_metric, segment_cloud, EmbeddedCloud};
pub use collapse::{
    central_collapse_ratio, collapse_profile, CollapseConfig, CollapseProfile, CollapseSample,
};
pub use defect::{
    curve_family, isometry_equivalence_check, path_isometry_defect, DefectReport,
    EquivalenceReport,
};
pub use error::{LabError, Result};
pub use finsler::{conformal_certificate, linear_finsler_defect, FinslerDefect};
pub use tube::{
    tube_comparison, tube_comparison_with_ambient, tube_points, SurfaceModel, TubePair,
    TubeReport, TubeSpec,
};

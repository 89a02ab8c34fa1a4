//! Sub-Riemannian structures via bundle morphisms, the induced cost on
//! tangent vectors, monotone Riemannian approximants, and
//! Carnot-Caratheodory distance computation on anisotropic grid graphs.

pub mod distance;
pub mod error;
pub mod grid;
pub mod norm_field;
pub mod schedule;
pub mod structure;

pub use distance::{
    cc_distance, cc_distances_from, cc_shortest_path, monotone_convergence_report,
    path_uses_only_finite_cost_edges, reachable_at_infinity, MonotoneReport, MonotoneRow,
};
pub use error::{Result, SubRiemannianError};
pub use grid::{GridDomain, DEFAULT_STENCIL_RADIUS};
pub use norm_field::{finsler_length, NormFieldPlanar};
pub use schedule::{approximant_weight, weight_chain, ApproximantIndex, ApproximantSchedule};
pub use structure::{
    least_squares_cost, model_catalog, CatalogModel, Cost, HorizontalStructure, SigmaField,
    RANGE_REL_TOL,
};

//! Constructive Lipschitz embedding pipeline for finite metric spaces:
//! covers of measured order, Lipschitz partitions of unity, general-position
//! targets, almost-injective maps, secant-avoiding projections, openness
//! radii, refinement rounds, and the terminating embedding loop.

pub mod cover;
pub mod dimension;
pub mod embed;
pub mod error;
pub mod general_position;
pub mod menger;
pub mod partition;
pub mod projection;
pub mod refine;
pub mod rng;
pub mod stability;

pub use cover::{build_cover, Cover};
pub use dimension::box_counting_dimension;
pub use embed::{default_schedule, embed, embed_with_dimension, EmbedReport, EmbedStep};
pub use error::{EmbedError, Result};
pub use general_position::{
    margin_of, sample_general_position, GeneralPositionSet, MARGIN_REL_THRESHOLD,
};
pub use menger::{lipschitz_budget, menger_map};
pub use partition::{partition_of_unity, Partition};
pub use projection::{secant_projection, ProjectionChain, SECANT_THRESHOLD};
pub use refine::{refine, RefineOutcome};
pub use stability::{stability_radius, StabilityRadius};

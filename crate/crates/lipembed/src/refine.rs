//! One refinement round: stack an almost-injective companion onto the
//! current map and project back down through a secant-avoiding chain.
//!
//! Given `f : X -> E^N`, the round builds the companion `g` at scale
//! `epsilon`, stacks `(f, g) : X -> E^(2N)`, and composes with a projection
//! chain back to `E^N` that is injective on the stacked image and within
//! operator distance `beta` of the plain first-factor projection, where
//!
//! ```text
//! beta = delta / (2 sqrt(|f|_Lip^2 + |g|_Lip^2)) .
//! ```
//!
//! Both halves of the contract are then measurable exactly: the Lipschitz
//! distance to `f` stays below `delta` and the injectivity gap drops below
//! `epsilon`.

use metric_core::PointMap;

use crate::cover::build_cover;
use crate::error::{EmbedError, Result};
use crate::general_position::sample_general_position;
use crate::menger::menger_map;
use crate::partition::partition_of_unity;
use crate::projection::secant_projection;
use crate::rng::stream;

/// Result of a refinement round with its measured contract values.
#[derive(Debug, Clone)]
pub struct RefineOutcome {
    pub map: PointMap,
    /// Measured Lipschitz-norm distance to the input map.
    pub lip_distance: f64,
    /// Measured injectivity gap of the output.
    pub delta_zero: f64,
    /// Achieved cover order at this scale.
    pub cover_order: usize,
    /// General-position margin of the sampled targets.
    pub target_margin: f64,
    /// Operator budget used for the projection chain.
    pub beta: f64,
    /// Secant margin of the chain on the stacked image.
    pub secant_margin: f64,
}

pub fn refine(f: &PointMap, epsilon: f64, delta: f64, seed: u64) -> Result<RefineOutcome> {
    if !(epsilon > 0.0) {
        return Err(EmbedError::NonpositiveEpsilon(epsilon));
    }
    if !(delta > 0.0) {
        return Err(EmbedError::NonpositiveDelta(delta));
    }
    let space = f.domain_arc();
    let dim = f.dim();

    let cover = build_cover(&space, epsilon)?;
    let partition = partition_of_unity(&space, &cover)?;
    let targets = sample_general_position(
        cover.set_count(),
        dim,
        &vec![(0.0, 1.0); dim],
        seed_for(seed, "refine-targets"),
    )?;
    let g = menger_map(space.clone(), &partition, &targets)?;

    // Stack (f, g) into E^(2N).
    let stacked: Vec<Vec<f64>> = f
        .vectors()
        .iter()
        .zip(g.vectors().iter())
        .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
        .collect();

    let f_lip = f.lip_norm().total;
    let g_lip = g.lip_norm().total;
    let stack_norm = (f_lip * f_lip + g_lip * g_lip).sqrt().max(f64::MIN_POSITIVE);
    let beta = delta / (2.0 * stack_norm);

    let chain = secant_projection(&stacked, dim, beta, seed_for(seed, "refine-projection"))?;
    let vectors: Vec<Vec<f64>> = stacked.iter().map(|p| chain.apply(p)).collect();
    let refined = PointMap::new(space, vectors, dim)?;

    let lip_distance = f.lip_distance(&refined)?;
    let delta_zero = refined.delta_zero();
    Ok(RefineOutcome {
        map: refined,
        lip_distance,
        delta_zero,
        cover_order: cover.order(),
        target_margin: targets.margin(),
        beta,
        secant_margin: chain.secant_margin(),
    })
}

fn seed_for(seed: u64, label: &str) -> u64 {
    use rand::RngCore;
    stream(seed, label, 0).next_u64()
}

//! The embedding loop: iterated refinement until exact injectivity.
//!
//! Starting from the zero map into `E^(2m+1)`, each round refines at the
//! next scale of the epsilon schedule with a closeness budget that shrinks
//! geometrically. Every round re-establishes the gap bound at its own scale
//! (the refinement contract gives `gap < epsilon_n`, and the schedule
//! decreases), so coarser injectivity scales survive without further
//! coupling; on a finite space the gap is measured exactly and the loop
//! stops at zero.
//!
//! The closeness budget is deliberately not capped by the stability radius
//! of the previous iterate: separations produced by a projection round scale
//! with its operator budget, so radius-capped budgets shrink geometrically
//! round over round and collapse the secant search before the loop can
//! finish. The openness radius remains available as its own operation.

use std::sync::Arc;

use metric_core::{FiniteMetricSpace, LipNorm, PointMap};

use crate::error::{EmbedError, Result};
use crate::refine::{refine, RefineOutcome};

/// One loop iteration in the run log.
#[derive(Debug, Clone)]
pub struct EmbedStep {
    pub iteration: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub lip_distance: f64,
    pub delta_zero: f64,
    pub cover_order: usize,
    pub target_margin: f64,
}

/// Final embedding together with its certificate data.
#[derive(Debug, Clone)]
pub struct EmbedReport {
    pub map: PointMap,
    pub iterations: usize,
    /// Cover order achieved on the last round.
    pub order_achieved: usize,
    /// General-position margin of the last target sample.
    pub margin: f64,
    /// Residual injectivity gap (zero on success).
    pub delta_final: f64,
    pub lip_norm: LipNorm,
    pub distortion: (f64, f64),
    pub seed: u64,
    pub log: Vec<EmbedStep>,
}

/// Embeds with target dimension `2m + 1`.
pub fn embed(
    space: Arc<FiniteMetricSpace>,
    m: usize,
    schedule: &[f64],
    seed: u64,
) -> Result<EmbedReport> {
    embed_with_dimension(space, 2 * m + 1, schedule, seed)
}

/// Embeds with an explicit target dimension.
pub fn embed_with_dimension(
    space: Arc<FiniteMetricSpace>,
    dim: usize,
    schedule: &[f64],
    seed: u64,
) -> Result<EmbedReport> {
    if dim == 0 {
        return Err(EmbedError::BadDimension);
    }
    let min_dist = space.min_positive_distance().unwrap_or(0.0);
    let decreasing = schedule.windows(2).all(|w| w[1] < w[0]);
    let reaches_floor = match schedule.last() {
        Some(&last) => space.len() == 1 || last < min_dist,
        None => space.len() == 1,
    };
    if !(decreasing && reaches_floor) {
        return Err(EmbedError::BadSchedule { min_dist });
    }

    let mut current = PointMap::zero(space.clone(), dim);
    let mut log = Vec::new();
    let mut last_outcome: Option<RefineOutcome> = None;

    if space.len() == 1 {
        // A single point is embedded by any vector.
        return finish(current, 0, 0, 0.0, seed, log);
    }

    for (iteration, &epsilon) in schedule.iter().enumerate() {
        let delta = 0.5f64.powi(iteration as i32 + 1);
        let outcome = refine(&current, epsilon, delta, seed.wrapping_add(iteration as u64))?;
        log.push(EmbedStep {
            iteration,
            epsilon,
            delta,
            lip_distance: outcome.lip_distance,
            delta_zero: outcome.delta_zero,
            cover_order: outcome.cover_order,
            target_margin: outcome.target_margin,
        });
        current = outcome.map.clone();
        let order = outcome.cover_order;
        let margin = outcome.target_margin;
        last_outcome = Some(outcome);
        if current.delta_zero() == 0.0 {
            return finish(current, iteration + 1, order, margin, seed, log);
        }
    }
    let _ = last_outcome;
    Err(EmbedError::ScheduleExhausted { residual: current.delta_zero() })
}

fn finish(
    map: PointMap,
    iterations: usize,
    order: usize,
    margin: f64,
    seed: u64,
    log: Vec<EmbedStep>,
) -> Result<EmbedReport> {
    let lip_norm = map.lip_norm();
    let distortion = if map.domain().len() >= 2 {
        map.distortion()?
    } else {
        (1.0, 1.0)
    };
    Ok(EmbedReport {
        delta_final: map.delta_zero(),
        map,
        iterations,
        order_achieved: order,
        margin,
        lip_norm,
        distortion,
        seed,
        log,
    })
}

/// Geometric schedule from the diameter down past the minimal distance.
pub fn default_schedule(space: &FiniteMetricSpace) -> Vec<f64> {
    let diameter = space.diameter().max(f64::MIN_POSITIVE);
    let floor = space.min_positive_distance().unwrap_or(diameter);
    let mut schedule = Vec::new();
    let mut epsilon = diameter;
    loop {
        schedule.push(epsilon);
        if epsilon < floor {
            break;
        }
        epsilon /= 2.0;
    }
    schedule
}

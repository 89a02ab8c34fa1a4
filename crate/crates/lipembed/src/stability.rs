//! Openness radius of the almost-injective maps.
//!
//! For a map with injectivity gap below `b`, every pair at distance at least
//! `b` has strictly separated images; half the smallest such separation is a
//! radius in the Lipschitz norm within which perturbations keep the gap at
//! most `b`.

use metric_core::PointMap;

use crate::error::{EmbedError, Result};

/// Radius outcome: a bound, or unconstrained when no pair is that far apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StabilityRadius {
    Bounded(f64),
    /// The far-pair set is empty; every perturbation keeps the gap below `b`.
    Unconstrained,
}

impl StabilityRadius {
    pub fn bound(self) -> Option<f64> {
        match self {
            StabilityRadius::Bounded(v) => Some(v),
            StabilityRadius::Unconstrained => None,
        }
    }
}

/// Half the minimal image separation over pairs at distance at least `b`.
///
/// Requires `gap(f) < b < epsilon`. Any map within the returned radius in
/// the Lipschitz norm keeps its injectivity gap at most `b`.
pub fn stability_radius(f: &PointMap, epsilon: f64, b: f64) -> Result<StabilityRadius> {
    let gap = f.delta_zero();
    if !(gap < b && b < epsilon) {
        return Err(EmbedError::StabilityPrecondition { gap, b, epsilon });
    }
    let space = f.domain();
    let mut min_separation = f64::INFINITY;
    let mut any = false;
    for (i, j) in space.pairs() {
        if space.dist(i, j) >= b {
            any = true;
            min_separation = min_separation.min(f.image_distance(i, j));
        }
    }
    if !any {
        return Ok(StabilityRadius::Unconstrained);
    }
    Ok(StabilityRadius::Bounded(min_separation / 2.0))
}

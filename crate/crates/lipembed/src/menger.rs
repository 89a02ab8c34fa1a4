//! Almost-injective maps from partitions and general-position targets.
//!
//! The map sends `x` to the partition-weighted combination of the targets,
//!
//! ```text
//! g(x) = sum_j phi_j(x) z_j .
//! ```
//!
//! When the cover order is at most `m + 1` and the targets live in general
//! position in `E^(2m+1)`, a collision `g(x1) = g(x2)` forces the two points
//! into a common cover set: the difference of the two weight rows is an
//! affine dependence among at most `2m + 2` of the targets, which general
//! position rules out unless the rows agree. Points of a common set sit at
//! distance below the cover's diameter bound.

use std::sync::Arc;

use metric_core::{FiniteMetricSpace, PointMap};

use crate::error::{EmbedError, Result};
use crate::general_position::GeneralPositionSet;
use crate::partition::Partition;

/// Builds `g(x) = sum_j phi_j(x) z_j` as a point map.
pub fn menger_map(
    space: Arc<FiniteMetricSpace>,
    partition: &Partition,
    targets: &GeneralPositionSet,
) -> Result<PointMap> {
    let sets = partition.set_count();
    if targets.len() != sets {
        return Err(EmbedError::TargetCountMismatch { sets, targets: targets.len() });
    }
    let dim = targets.dim();
    let n = space.len();
    let mut vectors = vec![vec![0.0f64; dim]; n];
    for (j, z) in targets.points().iter().enumerate() {
        for x in 0..n {
            let weight = partition.value(j, x);
            if weight != 0.0 {
                for (out, coord) in vectors[x].iter_mut().zip(z.iter()) {
                    *out += weight * coord;
                }
            }
        }
    }
    Ok(PointMap::new(space, vectors, dim)?)
}

/// Upper bound `sum_j Lip(phi_j) |z_j|` on the Lipschitz constant of the map.
pub fn lipschitz_budget(partition: &Partition, targets: &GeneralPositionSet) -> f64 {
    partition
        .lipschitz()
        .iter()
        .zip(targets.points().iter())
        .map(|(lip, z)| lip * z.iter().map(|a| a * a).sum::<f64>().sqrt())
        .sum()
}

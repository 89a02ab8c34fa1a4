//! Lipschitz partitions of unity subordinate to a net cover.
//!
//! Each cover set contributes the tent bump `max(0, r - d(x, c))` around its
//! net center; normalizing the bumps yields functions that sum to one, vanish
//! off their sets, and are Lipschitz. The recorded constants are the exact
//! pairwise ratio suprema over the finite space.

use metric_core::FiniteMetricSpace;

use crate::cover::Cover;
use crate::error::{EmbedError, Result};

#[derive(Debug, Clone)]
pub struct Partition {
    phi: Vec<Vec<f64>>,
    lipschitz: Vec<f64>,
}

impl Partition {
    /// Value `phi[set][point]`.
    pub fn value(&self, set: usize, point: usize) -> f64 {
        self.phi[set][point]
    }

    pub fn functions(&self) -> &[Vec<f64>] {
        &self.phi
    }

    pub fn set_count(&self) -> usize {
        self.phi.len()
    }

    /// Exact Lipschitz constant recorded per function.
    pub fn lipschitz(&self) -> &[f64] {
        &self.lipschitz
    }

    pub fn row_sum(&self, point: usize) -> f64 {
        self.phi.iter().map(|row| row[point]).sum()
    }
}

/// Builds the normalized tent-bump partition subordinate to `cover`.
pub fn partition_of_unity(space: &FiniteMetricSpace, cover: &Cover) -> Result<Partition> {
    let n = space.len();
    let sets = cover.set_count();
    let radius = cover.radius();
    let mut bumps = vec![vec![0.0f64; n]; sets];
    for (j, &c) in cover.centers().iter().enumerate() {
        for x in 0..n {
            bumps[j][x] = (radius - space.dist(x, c)).max(0.0);
        }
    }
    let mut totals = vec![0.0f64; n];
    for row in &bumps {
        for (x, v) in row.iter().enumerate() {
            totals[x] += v;
        }
    }
    if let Some(point) = totals.iter().position(|&t| t <= 0.0) {
        return Err(EmbedError::CoverDefect { point });
    }
    let mut phi = bumps;
    for row in phi.iter_mut() {
        for (x, v) in row.iter_mut().enumerate() {
            *v /= totals[x];
        }
    }
    let mut lipschitz = Vec::with_capacity(sets);
    for row in &phi {
        let mut constant: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                constant = constant.max((row[i] - row[j]).abs() / space.dist(i, j));
            }
        }
        lipschitz.push(constant);
    }
    Ok(Partition { phi, lipschitz })
}

//! Open covers of controlled diameter from greedy nets.
//!
//! The construction picks net centers greedily at separation `epsilon / 2`
//! and covers with the open balls of that radius, so every set has diameter
//! strictly below `epsilon`. The order of the cover (the largest number of
//! sets meeting at one point) is measured and reported, not guaranteed: the
//! dimension-theoretic bound behind the embedding lemma is not certified by
//! a greedy net.

use metric_core::FiniteMetricSpace;

use crate::error::{EmbedError, Result};

#[derive(Debug, Clone)]
pub struct Cover {
    sets: Vec<Vec<usize>>,
    centers: Vec<usize>,
    radius: f64,
    epsilon: f64,
    order: usize,
}

impl Cover {
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    /// Common net-ball radius of the sets.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Measured order: the maximum membership count over points.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, set: usize, point: usize) -> bool {
        self.sets[set].binary_search(&point).is_ok()
    }

    /// Recomputes the order from the sets.
    pub fn recompute_order(&self, n: usize) -> usize {
        let mut membership = vec![0usize; n];
        for set in &self.sets {
            for &x in set {
                membership[x] += 1;
            }
        }
        membership.into_iter().max().unwrap_or(0)
    }

    /// Largest set diameter measured against the distance table.
    pub fn max_set_diameter(&self, space: &FiniteMetricSpace) -> f64 {
        let mut worst: f64 = 0.0;
        for set in &self.sets {
            for (i, &x) in set.iter().enumerate() {
                for &y in set.iter().skip(i + 1) {
                    worst = worst.max(space.dist(x, y));
                }
            }
        }
        worst
    }
}

/// Greedy net cover at diameter bound `epsilon`.
pub fn build_cover(space: &FiniteMetricSpace, epsilon: f64) -> Result<Cover> {
    if !(epsilon > 0.0) {
        return Err(EmbedError::NonpositiveEpsilon(epsilon));
    }
    let n = space.len();
    let radius = epsilon / 2.0;
    let mut centers: Vec<usize> = Vec::new();
    for p in 0..n {
        if centers.iter().all(|&c| space.dist(p, c) >= radius) {
            centers.push(p);
        }
    }
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); centers.len()];
    let mut membership = vec![0usize; n];
    for x in 0..n {
        for (j, &c) in centers.iter().enumerate() {
            if space.dist(x, c) < radius {
                sets[j].push(x);
                membership[x] += 1;
            }
        }
    }
    debug_assert!(membership.iter().all(|&m| m > 0), "greedy net must cover");
    let order = membership.into_iter().max().unwrap_or(0);
    Ok(Cover { sets, centers, radius, epsilon, order })
}

//! Chain pull metrics.
//!
//! Given a map `f` and a step bound `epsilon`, an epsilon-chain from `p` to
//! `q` is a point sequence whose consecutive distances stay at or below
//! `epsilon`. The pull value is the infimum over chains of the summed image
//! increments. On a finite space this is a shortest-path computation on the
//! chain graph whose edges join pairs at distance at most `epsilon`, weighted
//! by the image distance. Pairs that no chain joins are reported as a
//! distinguished unreachable outcome, matching the possibly-infinite
//! pre-metric.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{MetricError, Result};
use crate::point_map::PointMap;

/// Outcome of a pull-metric evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PullValue {
    Finite(f64),
    /// No epsilon-chain joins the two points.
    Unreachable,
}

impl PullValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            PullValue::Finite(v) => Some(v),
            PullValue::Unreachable => None,
        }
    }
}

/// Pull value between `p` and `q` along epsilon-chains.
pub fn pull_metric(f: &PointMap, epsilon: f64, p: usize, q: usize) -> Result<PullValue> {
    let values = pull_metric_from(f, epsilon, p)?;
    if q >= values.len() {
        return Err(MetricError::PointOutOfRange(q));
    }
    Ok(values[q])
}

/// Pull values of one pair across a schedule of step bounds.
///
/// No limit is claimed: on a finite space the value stabilizes once the
/// bound drops below the connectivity threshold, and the profile records
/// exactly what each explicit bound yields.
pub fn pull_profile(
    f: &PointMap,
    epsilons: &[f64],
    p: usize,
    q: usize,
) -> Result<Vec<(f64, PullValue)>> {
    epsilons
        .iter()
        .map(|&eps| Ok((eps, pull_metric(f, eps, p, q)?)))
        .collect()
}

/// Pull values from `p` to every point, sharing one chain-graph search.
pub fn pull_metric_from(f: &PointMap, epsilon: f64, p: usize) -> Result<Vec<PullValue>> {
    if !(epsilon > 0.0) {
        return Err(MetricError::NonpositiveEpsilon(epsilon));
    }
    let space = f.domain();
    let n = space.len();
    if p >= n {
        return Err(MetricError::PointOutOfRange(p));
    }
    // Dijkstra on the implicit chain graph; image increments may be zero,
    // which Dijkstra handles since weights are still nonnegative.
    let mut dist: Vec<Option<f64>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[p] = Some(0.0);
    heap.push(Entry { dist: 0.0, vertex: p });
    while let Some(Entry { dist: d, vertex: u }) = heap.pop() {
        if let Some(du) = dist[u] {
            if d > du {
                continue;
            }
        }
        for v in 0..n {
            if v == u || space.dist(u, v) > epsilon {
                continue;
            }
            let candidate = d + f.image_distance(u, v);
            let improves = match dist[v] {
                Some(dv) => candidate < dv,
                None => true,
            };
            if improves {
                dist[v] = Some(candidate);
                heap.push(Entry { dist: candidate, vertex: v });
            }
        }
    }
    Ok(dist
        .into_iter()
        .map(|d| match d {
            Some(v) => PullValue::Finite(v),
            None => PullValue::Unreachable,
        })
        .collect())
}

#[derive(Copy, Clone, PartialEq)]
struct Entry {
    dist: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .expect("image distances are finite")
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

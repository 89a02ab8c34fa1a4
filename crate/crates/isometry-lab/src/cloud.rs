//! Point clouds in Euclidean space and the path metrics their proximity
//! graphs induce.
//!
//! Points within the connectivity radius are joined by edges weighted with
//! their Euclidean distance; the induced metric is the all-pairs
//! shortest-path closure, which dominates the restricted Euclidean metric by
//! construction.

use std::collections::BTreeMap;

use metric_core::{euclidean_distance, FiniteMetricSpace, LengthGraph};

use crate::error::{LabError, Result};

#[derive(Debug, Clone)]
pub struct EmbeddedCloud {
    points: Vec<Vec<f64>>,
    radius: f64,
}

impl EmbeddedCloud {
    pub fn new(points: Vec<Vec<f64>>, radius: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(LabError::EmptyCloud);
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(LabError::BadRadius(radius));
        }
        let dim = points[0].len();
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(LabError::PointDimensionMismatch {
                    index,
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        Ok(EmbeddedCloud { points, radius })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    /// The proximity graph: edges between points at distance <= radius.
    ///
    /// Candidate pairs come from a cell hash at the connectivity radius, so
    /// construction is near-linear for bounded-density clouds.
    pub fn proximity_graph(&self) -> Result<LengthGraph> {
        let n = self.len();
        let mut graph = LengthGraph::new(n)?;
        let cell = self.radius;
        let mut buckets: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, p) in self.points.iter().enumerate() {
            let key: Vec<i64> = p.iter().map(|&x| (x / cell).floor() as i64).collect();
            buckets.entry(key).or_default().push(i);
        }
        let dim = self.dim();
        let mut neighbor_keys = vec![vec![0i64; dim]];
        for axis in 0..dim {
            let mut extended = Vec::with_capacity(neighbor_keys.len() * 3);
            for key in &neighbor_keys {
                for delta in [-1i64, 0, 1] {
                    let mut k = key.clone();
                    k[axis] = delta;
                    extended.push(k);
                }
            }
            neighbor_keys = extended;
            neighbor_keys.dedup();
        }
        for (key, members) in &buckets {
            for offset in &neighbor_keys {
                let neighbor_key: Vec<i64> =
                    key.iter().zip(offset.iter()).map(|(a, b)| a + b).collect();
                if neighbor_key < *key {
                    continue; // each unordered cell pair visited once
                }
                let Some(others) = buckets.get(&neighbor_key) else {
                    continue;
                };
                for &i in members {
                    for &j in others {
                        if (neighbor_key == *key && j <= i) || i == j {
                            continue;
                        }
                        let d = euclidean_distance(&self.points[i], &self.points[j]);
                        if d > 0.0 && d <= self.radius {
                            graph.add_edge(i, j, d)?;
                        }
                    }
                }
            }
        }
        Ok(graph)
    }
}

/// All-pairs path metric of the proximity graph.
///
/// The result dominates the restricted Euclidean metric exactly: shortest
/// paths are clamped from below by the straight chord, which floating-point
/// summation alone would not guarantee on collinear chains.
pub fn induced_path_metric(cloud: &EmbeddedCloud) -> Result<FiniteMetricSpace> {
    let graph = cloud.proximity_graph()?;
    let n = cloud.len();
    let mut table = vec![0.0f64; n * n];
    for source in 0..n {
        let dist = graph.dijkstra(source)?;
        for (target, value) in dist.iter().enumerate() {
            match value {
                Some(d) => {
                    let chord = euclidean_distance(&cloud.points()[source], &cloud.points()[target]);
                    table[source * n + target] = d.max(chord);
                }
                None => return Err(LabError::Disconnected { a: source, b: target }),
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d = table[i * n + j].min(table[j * n + i]);
            table[i * n + j] = d;
            table[j * n + i] = d;
        }
    }
    Ok(FiniteMetricSpace::from_flat(n, table)?)
}

/// Uniform samples of the unit circle in the `z = 0` plane of `E^3`.
pub fn circle_cloud(count: usize, radius: f64) -> Result<EmbeddedCloud> {
    let points: Vec<Vec<f64>> = (0..count)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
            vec![theta.cos(), theta.sin(), 0.0]
        })
        .collect();
    EmbeddedCloud::new(points, radius)
}

/// Uniform samples of the segment from the origin to `(1, 0, 0)` in `E^3`.
pub fn segment_cloud(count: usize, radius: f64) -> Result<EmbeddedCloud> {
    let points: Vec<Vec<f64>> = (0..count)
        .map(|k| vec![k as f64 / (count.max(2) - 1) as f64, 0.0, 0.0])
        .collect();
    EmbeddedCloud::new(points, radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_corners_with_diagonal_excluded() {
        let cloud = EmbeddedCloud::new(
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
                vec![0.0, 1.0],
            ],
            1.05,
        )
        .unwrap();
        let space = induced_path_metric(&cloud).unwrap();
        assert_eq!(space.dist(0, 1), 1.0);
        assert_eq!(space.dist(0, 2), 2.0);
        assert_eq!(space.dist(1, 3), 2.0);
    }

    #[test]
    fn collinear_chain_recovers_euclidean() {
        let points: Vec<Vec<f64>> = (0..11).map(|i| vec![0.1 * i as f64]).collect();
        let cloud = EmbeddedCloud::new(points.clone(), 0.15).unwrap();
        let space = induced_path_metric(&cloud).unwrap();
        for i in 0..11 {
            for j in 0..11 {
                let direct = (points[i][0] - points[j][0]).abs();
                assert!((space.dist(i, j) - direct).abs() <= 1e-12);
                assert!(space.dist(i, j) >= direct);
            }
        }
    }

    #[test]
    fn circle_antipodal_distance_near_pi() {
        let cloud = circle_cloud(360, 0.02).unwrap();
        let space = induced_path_metric(&cloud).unwrap();
        let d = space.dist(0, 180);
        let relative = (d - std::f64::consts::PI).abs() / std::f64::consts::PI;
        assert!(relative < 1e-3, "antipodal distance {d}");
    }

    #[test]
    fn path_metric_dominates_euclidean_exactly() {
        let cloud = circle_cloud(90, 0.08).unwrap();
        let space = induced_path_metric(&cloud).unwrap();
        for i in 0..cloud.len() {
            for j in 0..cloud.len() {
                let chord = euclidean_distance(&cloud.points()[i], &cloud.points()[j]);
                assert!(space.dist(i, j) >= chord);
            }
        }
    }

    #[test]
    fn disconnected_cloud_is_an_error() {
        let cloud = EmbeddedCloud::new(vec![vec![0.0], vec![10.0]], 1.0).unwrap();
        assert!(matches!(
            induced_path_metric(&cloud),
            Err(LabError::Disconnected { .. })
        ));
    }

    #[test]
    fn hashed_graph_matches_quadratic_scan() {
        let points: Vec<Vec<f64>> = (0..40)
            .map(|i| {
                let t = i as f64 * 0.37;
                vec![t.sin(), (2.3 * t).cos(), (0.7 * t).sin()]
            })
            .collect();
        let cloud = EmbeddedCloud::new(points.clone(), 0.6).unwrap();
        let graph = cloud.proximity_graph().unwrap();
        let mut expected = 0usize;
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let d = euclidean_distance(&points[i], &points[j]);
                if d > 0.0 && d <= 0.6 {
                    expected += 1;
                }
            }
        }
        let listed: usize = (0..cloud.len()).map(|v| graph.neighbors(v).len()).sum();
        assert_eq!(listed, expected * 2);
    }
}

//! Maps from a finite metric space into `E^N`.
//!
//! A [`PointMap`] stores one image vector per point together with cached
//! values of the Lipschitz norm and the injectivity gap. The Lipschitz norm
//! used throughout is the sup norm of the map plus the best Lipschitz
//! constant,
//!
//! ```text
//! |f|_Lip = |f|_inf + sup |f(x) - f(y)| / d(x, y)
//! ```
//!
//! and the injectivity gap is the largest diameter of a fiber; it vanishes
//! exactly when the map is injective.

use std::sync::Arc;

use crate::error::{MetricError, Result};
use crate::space::{euclidean_distance, euclidean_norm, FiniteMetricSpace};

/// Sup part, Lipschitz ratio part, and their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipNorm {
    pub sup_part: f64,
    pub lip_part: f64,
    pub total: f64,
}

/// A table map `X -> E^N` over a finite metric space.
#[derive(Debug, Clone)]
pub struct PointMap {
    domain: Arc<FiniteMetricSpace>,
    vectors: Vec<Vec<f64>>,
    dim: usize,
    lip_norm: LipNorm,
    delta_zero: f64,
}

impl PointMap {
    pub fn new(domain: Arc<FiniteMetricSpace>, vectors: Vec<Vec<f64>>, dim: usize) -> Result<Self> {
        let n = domain.len();
        if vectors.len() != n {
            return Err(MetricError::WrongImageCount { n, got: vectors.len() });
        }
        for (label, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(MetricError::ImageDimensionMismatch {
                    label,
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        let lip_norm = compute_lip_norm(&domain, &vectors);
        let delta_zero = compute_delta(&domain, &vectors, 0.0);
        Ok(PointMap { domain, vectors, dim, lip_norm, delta_zero })
    }

    /// The constant-zero map into `E^dim`.
    pub fn zero(domain: Arc<FiniteMetricSpace>, dim: usize) -> Self {
        let n = domain.len();
        Self::new(domain, vec![vec![0.0; dim]; n], dim).expect("zero map is always valid")
    }

    pub fn domain(&self) -> &FiniteMetricSpace {
        &self.domain
    }

    pub fn domain_arc(&self) -> Arc<FiniteMetricSpace> {
        Arc::clone(&self.domain)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    #[inline]
    pub fn image(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    #[inline]
    pub fn image_distance(&self, i: usize, j: usize) -> f64 {
        euclidean_distance(&self.vectors[i], &self.vectors[j])
    }

    /// Cached Lipschitz norm `(sup part, ratio part, total)`.
    pub fn lip_norm(&self) -> LipNorm {
        self.lip_norm
    }

    /// Cached injectivity gap at tolerance zero.
    pub fn delta_zero(&self) -> f64 {
        self.delta_zero
    }

    pub fn is_injective(&self) -> bool {
        self.delta_zero == 0.0
    }

    /// Injectivity gap relaxed by a tolerance: the largest `d(x, y)` over
    /// pairs whose image distance is at most `tau` (closed comparison).
    pub fn delta_injectivity(&self, tau: f64) -> f64 {
        assert!(tau >= 0.0, "tolerance must be nonnegative");
        if tau == 0.0 {
            self.delta_zero
        } else {
            compute_delta(&self.domain, &self.vectors, tau)
        }
    }

    /// Expansion and contraction ratios `max/min |f(x)-f(y)| / d(x,y)`.
    ///
    /// Requires an injective map; the offending pair is reported otherwise.
    pub fn distortion(&self) -> Result<(f64, f64)> {
        let n = self.domain.len();
        let mut expansion: f64 = 0.0;
        let mut contraction = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                let image = self.image_distance(i, j);
                if image == 0.0 {
                    return Err(MetricError::NotInjective { a: i, b: j });
                }
                let ratio = image / self.domain.dist(i, j);
                expansion = expansion.max(ratio);
                contraction = contraction.min(ratio);
            }
        }
        if n < 2 {
            // No pairs: both ratios degenerate to 1 by convention.
            return Ok((1.0, 1.0));
        }
        Ok((expansion, contraction))
    }

    /// Returns the map with every image vector translated by `shift`.
    pub fn translate(&self, shift: &[f64]) -> Result<PointMap> {
        if shift.len() != self.dim {
            return Err(MetricError::DimensionMismatch { expected: self.dim, got: shift.len() });
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        PointMap::new(Arc::clone(&self.domain), vectors, self.dim)
    }

    /// Returns the map with every image vector scaled by `factor`.
    pub fn scale(&self, factor: f64) -> PointMap {
        let vectors = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|a| a * factor).collect())
            .collect();
        PointMap::new(Arc::clone(&self.domain), vectors, self.dim)
            .expect("scaling preserves shape")
    }

    /// Lipschitz norm of the difference `self - other` over the same domain.
    pub fn lip_distance(&self, other: &PointMap) -> Result<f64> {
        if other.dim != self.dim {
            return Err(MetricError::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        if other.domain.len() != self.domain.len() {
            return Err(MetricError::WrongImageCount {
                n: self.domain.len(),
                got: other.domain.len(),
            });
        }
        let diff: Vec<Vec<f64>> = self
            .vectors
            .iter()
            .zip(other.vectors.iter())
            .map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| x - y).collect())
            .collect();
        Ok(compute_lip_norm(&self.domain, &diff).total)
    }
}

fn compute_lip_norm(domain: &FiniteMetricSpace, vectors: &[Vec<f64>]) -> LipNorm {
    let sup_part = vectors.iter().map(|v| euclidean_norm(v)).fold(0.0, f64::max);
    let n = domain.len();
    let mut lip_part: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let ratio = euclidean_distance(&vectors[i], &vectors[j]) / domain.dist(i, j);
            lip_part = lip_part.max(ratio);
        }
    }
    LipNorm { sup_part, lip_part, total: sup_part + lip_part }
}

fn compute_delta(domain: &FiniteMetricSpace, vectors: &[Vec<f64>], tau: f64) -> f64 {
    let n = domain.len();
    let mut delta: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            if euclidean_distance(&vectors[i], &vectors[j]) <= tau {
                delta = delta.max(domain.dist(i, j));
            }
        }
    }
    delta
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point_space() -> Arc<FiniteMetricSpace> {
        Arc::new(FiniteMetricSpace::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap())
    }

    fn collinear_space(xs: &[f64]) -> Arc<FiniteMetricSpace> {
        let points: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        Arc::new(FiniteMetricSpace::from_euclidean_points(&points).unwrap())
    }

    #[test]
    fn constant_map_lip_norm() {
        let space = two_point_space();
        let map = PointMap::new(space, vec![vec![3.0, 4.0], vec![3.0, 4.0]], 2).unwrap();
        let norm = map.lip_norm();
        assert_eq!(norm.sup_part, 5.0);
        assert_eq!(norm.lip_part, 0.0);
        assert_eq!(norm.total, 5.0);
    }

    #[test]
    fn two_point_unit_map() {
        let space = two_point_space();
        let map = PointMap::new(space, vec![vec![0.0], vec![1.0]], 1).unwrap();
        let norm = map.lip_norm();
        assert_eq!((norm.sup_part, norm.lip_part, norm.total), (1.0, 1.0, 2.0));
    }

    #[test]
    fn scaling_is_homogeneous() {
        let space = collinear_space(&[0.0, 0.5, 2.0]);
        let map = PointMap::new(space, vec![vec![0.0], vec![1.0], vec![1.5]], 1).unwrap();
        let scaled = map.scale(3.0);
        let n0 = map.lip_norm();
        let n1 = scaled.lip_norm();
        assert!((n1.sup_part - 3.0 * n0.sup_part).abs() < 1e-15);
        assert!((n1.lip_part - 3.0 * n0.lip_part).abs() < 1e-15);
    }

    #[test]
    fn delta_zero_of_injective_map() {
        let space = collinear_space(&[0.0, 1.0, 2.0]);
        let map =
            PointMap::new(space, vec![vec![0.0], vec![1.0], vec![2.0]], 1).unwrap();
        assert_eq!(map.delta_zero(), 0.0);
        assert!(map.is_injective());
    }

    #[test]
    fn delta_of_constant_map_is_diameter() {
        let space = collinear_space(&[0.0, 1.0, 5.0]);
        let map = PointMap::new(space.clone(), vec![vec![7.0]; 3], 1).unwrap();
        assert_eq!(map.delta_zero(), space.diameter());
        assert_eq!(map.delta_injectivity(0.1), space.diameter());
    }

    #[test]
    fn delta_of_single_collapsed_pair() {
        let space = collinear_space(&[0.0, 1.0, 3.0]);
        // Points 1 and 2 collapse; d(1,2) = 2.
        let map = PointMap::new(space, vec![vec![0.0], vec![9.0], vec![9.0]], 1).unwrap();
        assert_eq!(map.delta_zero(), 2.0);
    }

    #[test]
    fn distortion_of_isometric_inclusion() {
        let space = collinear_space(&[0.0, 1.0, 2.0]);
        let map = PointMap::new(space, vec![vec![0.0], vec![1.0], vec![2.0]], 1).unwrap();
        assert_eq!(map.distortion().unwrap(), (1.0, 1.0));
    }

    #[test]
    fn distortion_of_doubling_map() {
        let space = collinear_space(&[0.0, 1.0, 2.0]);
        let map = PointMap::new(space, vec![vec![0.0], vec![2.0], vec![4.0]], 1).unwrap();
        assert_eq!(map.distortion().unwrap(), (2.0, 2.0));
    }

    #[test]
    fn distortion_of_square_corners() {
        // 4-cycle metric on the unit square corners, mapped to the plane.
        use crate::graph::{shortest_path_metric, LengthGraph};
        let graph =
            LengthGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])
                .unwrap();
        let space = Arc::new(shortest_path_metric(&graph).unwrap());
        let corners = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ];
        let map = PointMap::new(space.clone(), corners.clone(), 2).unwrap();

        // Independent brute-force oracle over the six pairs.
        let mut expansion: f64 = 0.0;
        let mut contraction = f64::INFINITY;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let ratio = euclidean_distance(&corners[i], &corners[j]) / space.dist(i, j);
                expansion = expansion.max(ratio);
                contraction = contraction.min(ratio);
            }
        }
        let (e, c) = map.distortion().unwrap();
        assert_eq!((e, c), (expansion, contraction));
        assert_eq!(e, 1.0);
        assert!((c - std::f64::consts::SQRT_2 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn distortion_rejects_collisions() {
        let space = collinear_space(&[0.0, 1.0]);
        let map = PointMap::new(space, vec![vec![1.0], vec![1.0]], 1).unwrap();
        let err = map.distortion().unwrap_err();
        assert!(matches!(err, MetricError::NotInjective { a: 0, b: 1 }));
    }

    #[test]
    fn lip_distance_to_translate_is_shift_norm() {
        let space = collinear_space(&[0.0, 1.0, 2.0]);
        let map = PointMap::new(space, vec![vec![0.0], vec![1.0], vec![2.0]], 1).unwrap();
        let shifted = map.translate(&[0.25]).unwrap();
        // The difference is constant, so only the sup part contributes.
        assert!((map.lip_distance(&shifted).unwrap() - 0.25).abs() < 1e-15);
    }
}

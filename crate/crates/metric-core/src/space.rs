//! Finite metric spaces backed by a validated distance table.
//!
//! Points are identified with the indices `0..n`. The table is checked on
//! construction: zero diagonal, exact symmetry, strictly positive
//! off-diagonal entries, and the triangle inequality up to a relative
//! floating-point slack of [`TRIANGLE_REL_TOL`].

use crate::error::{MetricError, Result};

/// Relative slack accepted when validating the triangle inequality.
///
/// A violation `d(i,k) > d(i,j) + d(j,k)` is tolerated while the excess stays
/// below `TRIANGLE_REL_TOL` times the largest distance involved; anything
/// larger rejects the table.
pub const TRIANGLE_REL_TOL: f64 = 1e-9;

/// A finite metric space: `n` labeled points and an `n x n` distance table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<f64>,
}

impl FiniteMetricSpace {
    /// Builds a space from a row-major table, validating all invariants.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(MetricError::EmptySpace);
        }
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MetricError::NotSquare { row: i, expected: n, got: row.len() });
            }
            dist.extend_from_slice(row);
        }
        let space = FiniteMetricSpace { n, dist };
        space.validate()?;
        Ok(space)
    }

    /// Builds a space from a flat row-major table of `n * n` entries.
    pub fn from_flat(n: usize, dist: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(MetricError::EmptySpace);
        }
        if dist.len() != n * n {
            return Err(MetricError::NotSquare { row: 0, expected: n * n, got: dist.len() });
        }
        let space = FiniteMetricSpace { n, dist };
        space.validate()?;
        Ok(space)
    }

    /// The metric induced on a point cloud in `E^k` by the Euclidean distance.
    pub fn from_euclidean_points(points: &[Vec<f64>]) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(MetricError::EmptySpace);
        }
        let dim = points[0].len();
        for p in points {
            if p.len() != dim {
                return Err(MetricError::DimensionMismatch { expected: dim, got: p.len() });
            }
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = euclidean_distance(&points[i], &points[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Self::from_flat(n, dist)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let d = self.dist[i * n + j];
                if !d.is_finite() {
                    return Err(MetricError::NonFiniteDistance { i, j, value: d });
                }
                if i == j && d != 0.0 {
                    return Err(MetricError::NonzeroDiagonal { i, value: d });
                }
                if i != j && d <= 0.0 {
                    return Err(MetricError::NonpositiveDistance { i, j, value: d });
                }
                let dji = self.dist[j * n + i];
                if d != dji {
                    return Err(MetricError::NotSymmetric { i, j, dij: d, dji });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let dij = self.dist[i * n + j];
                for k in 0..n {
                    let dik = self.dist[i * n + k];
                    let djk = self.dist[j * n + k];
                    let sum = dij + djk;
                    let excess = dik - sum;
                    if excess > TRIANGLE_REL_TOL * dik.max(dij).max(djk) {
                        return Err(MetricError::TriangleViolation { i, j, k, dik, sum, excess });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty spaces
    }

    /// Distance between points `i` and `j`. Panics on out-of-range indices.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "point index out of range");
        self.dist[i * self.n + j]
    }

    /// Largest pairwise distance; 0 for a single point.
    pub fn diameter(&self) -> f64 {
        self.dist.iter().cloned().fold(0.0, f64::max)
    }

    /// Smallest positive pairwise distance, if the space has at least two points.
    pub fn min_positive_distance(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let d = self.dist(i, j);
                best = Some(match best {
                    Some(b) => b.min(d),
                    None => d,
                });
            }
        }
        best
    }

    /// Iterator over all unordered pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
    }

    /// Reorders points by a permutation: new point `i` is old `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(MetricError::DimensionMismatch { expected: self.n, got: perm.len() });
        }
        let n = self.n;
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if perm[i] >= n || perm[j] >= n {
                    return Err(MetricError::PointOutOfRange(perm[i].max(perm[j])));
                }
                dist[i * n + j] = self.dist(perm[i], perm[j]);
            }
        }
        Ok(FiniteMetricSpace { n, dist })
    }
}

#[inline]
pub fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[inline]
pub fn euclidean_norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

//! Random target points in general position.
//!
//! A point family in `E^N` is in general position when every subset of at
//! most `N + 1` points is affinely independent. The margin quantifies this:
//! the minimal singular value of the difference matrix over subsets of
//! maximal size (appending difference rows only lowers the minimal singular
//! value, so smaller subsets are dominated). Sampling rejects and redraws
//! until the margin clears a scale-aware threshold.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{EmbedError, Result};
use crate::rng::stream;

/// Margin threshold as a fraction of the sampling-box diameter.
pub const MARGIN_REL_THRESHOLD: f64 = 1e-8;

/// Resampling budget before giving up.
pub const RESAMPLE_ROUNDS: usize = 100;

/// Exhaustive subset enumeration cap.
const EXHAUSTIVE_LIMIT: f64 = 1e6;

/// Random subsets drawn when enumeration is too large.
const RANDOM_SUBSETS: usize = 100_000;

/// Additional subsets through each point in the sampled regime.
const PER_POINT_SUBSETS: usize = 50;

#[derive(Debug, Clone)]
pub struct GeneralPositionSet {
    points: Vec<Vec<f64>>,
    dim: usize,
    margin: f64,
}

impl GeneralPositionSet {
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Minimal singular value over the checked difference configurations.
    pub fn margin(&self) -> f64 {
        self.margin
    }
}

/// Samples `n` uniform points in the box, rejecting low-margin draws.
pub fn sample_general_position(
    n: usize,
    dim: usize,
    bounds: &[(f64, f64)],
    seed: u64,
) -> Result<GeneralPositionSet> {
    if n == 0 {
        return Err(EmbedError::EmptyInput);
    }
    if dim == 0 || bounds.len() != dim {
        return Err(EmbedError::BadDimension);
    }
    let diameter = bounds
        .iter()
        .map(|(lo, hi)| (hi - lo) * (hi - lo))
        .sum::<f64>()
        .sqrt();
    let threshold = MARGIN_REL_THRESHOLD * diameter;
    for round in 0..RESAMPLE_ROUNDS {
        let mut rng = stream(seed, "general-position", round as u64);
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                bounds
                    .iter()
                    .map(|&(lo, hi)| rng.random_range(lo..hi))
                    .collect()
            })
            .collect();
        let margin = if n == 1 {
            diameter // vacuous subsets by convention
        } else {
            margin_of(&points, dim, seed)
        };
        if margin >= threshold {
            return Ok(GeneralPositionSet { points, dim, margin });
        }
    }
    Err(EmbedError::MarginRejection { rounds: RESAMPLE_ROUNDS, threshold })
}

/// Margin of an explicit family (used by tests and validation).
pub fn margin_of(points: &[Vec<f64>], dim: usize, seed: u64) -> f64 {
    let n = points.len();
    let size = (dim + 1).min(n); // points per subset
    if size < 2 {
        return f64::INFINITY;
    }
    if binomial(n, size) <= EXHAUSTIVE_LIMIT {
        let mut worst = f64::INFINITY;
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            worst = worst.min(subset_margin(points, &subset));
            if !next_combination(&mut subset, n) {
                break;
            }
        }
        worst
    } else {
        let mut rng = stream(seed, "margin-subsets", 0);
        let mut worst = f64::INFINITY;
        let draw = |rng: &mut rand_chacha::ChaCha8Rng, anchor: Option<usize>| {
            let mut subset = Vec::with_capacity(size);
            if let Some(a) = anchor {
                subset.push(a);
            }
            while subset.len() < size {
                let candidate = rng.random_range(0..n);
                if !subset.contains(&candidate) {
                    subset.push(candidate);
                }
            }
            subset.sort_unstable();
            subset
        };
        for _ in 0..RANDOM_SUBSETS {
            let subset = draw(&mut rng, None);
            worst = worst.min(subset_margin(points, &subset));
        }
        // Make sure every point participates in some checked subset.
        for anchor in 0..n {
            for _ in 0..PER_POINT_SUBSETS {
                let subset = draw(&mut rng, Some(anchor));
                worst = worst.min(subset_margin(points, &subset));
            }
        }
        worst
    }
}

fn subset_margin(points: &[Vec<f64>], subset: &[usize]) -> f64 {
    let base = &points[subset[0]];
    let rows = subset.len() - 1;
    let dim = base.len();
    let mut data = Vec::with_capacity(rows * dim);
    for &idx in &subset[1..] {
        for (a, b) in points[idx].iter().zip(base.iter()) {
            data.push(a - b);
        }
    }
    let matrix = DMatrix::from_row_slice(rows, dim, &data);
    matrix
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut value = 1.0f64;
    for i in 0..k {
        value *= (n - i) as f64 / (i + 1) as f64;
        if value > 1e18 {
            return value;
        }
    }
    value
}

/// Lexicographic successor of a k-combination of `0..n`; false at the end.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

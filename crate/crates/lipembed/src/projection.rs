//! Secant-avoiding orthogonal projection chains.
//!
//! A chain eliminates one axis at a time: each step rotates a sampled unit
//! direction `v` onto the axis being dropped and then forgets that
//! coordinate, which is the orthogonal projection along `v` expressed in
//! coordinates. Directions are drawn near the axis inside an angular budget
//! chosen so the composed map deviates from the plain coordinate projection
//! by at most the requested operator norm `beta`; a draw is accepted only if
//! no secant of the working set collapses below the current threshold.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{EmbedError, Result};
use crate::rng::stream;

/// Default per-step secant separation threshold.
pub const SECANT_THRESHOLD: f64 = 1e-4;

/// Threshold floor below which the point set counts as coincident.
pub const SECANT_FLOOR: f64 = 1e-12;

/// Draws per step before the threshold is halved.
const DRAWS_PER_THRESHOLD: usize = 200;

#[derive(Debug, Clone)]
struct Step {
    /// Angle of the sampled direction to the dropped axis.
    cos_theta: f64,
    sin_theta: f64,
    /// In-plane unit vector orthogonal to the axis (length = current dim).
    tilt: Vec<f64>,
}

impl Step {
    /// Rotates the sampled direction onto the last axis, then drops it.
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let d = x.len();
        debug_assert_eq!(self.tilt.len(), d);
        let xa = x[d - 1];
        let xb: f64 = x.iter().zip(self.tilt.iter()).map(|(u, w)| u * w).sum();
        let (c, s) = (self.cos_theta, self.sin_theta);
        let mut out = Vec::with_capacity(d - 1);
        for i in 0..d - 1 {
            out.push(x[i] + ((c - 1.0) * xb - s * xa) * self.tilt[i]);
        }
        // The dropped coordinate after rotation would be
        // xa + (c - 1) xa + s xb; it is discarded.
        out
    }
}

/// A composed chain of one-axis eliminations `E^M -> E^N`.
#[derive(Debug, Clone)]
pub struct ProjectionChain {
    steps: Vec<Step>,
    source_dim: usize,
    target_dim: usize,
    beta: f64,
    secant_margin: f64,
}

impl ProjectionChain {
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Requested operator-norm budget against the coordinate projection.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Minimal image separation ratio measured on the working set.
    pub fn secant_margin(&self) -> f64 {
        self.secant_margin
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut current = x.to_vec();
        for step in &self.steps {
            current = step.apply(&current);
        }
        current
    }

    /// The composed linear map as a dense matrix (columns = basis images).
    pub fn matrix(&self) -> DMatrix<f64> {
        let mut columns = Vec::with_capacity(self.source_dim);
        for i in 0..self.source_dim {
            let mut e = vec![0.0; self.source_dim];
            e[i] = 1.0;
            columns.push(self.apply(&e));
        }
        DMatrix::from_fn(self.target_dim, self.source_dim, |r, c| columns[c][r])
    }

    /// Operator norm of the composed map (at most 1 up to roundoff).
    pub fn operator_norm(&self) -> f64 {
        self.matrix()
            .svd(false, false)
            .singular_values
            .iter()
            .cloned()
            .fold(0.0, f64::max)
    }

    /// Operator-norm distance to the coordinate projection on the first
    /// `target_dim` coordinates.
    pub fn deviation_from_coordinate_projection(&self) -> f64 {
        let mut diff = self.matrix();
        for i in 0..self.target_dim {
            diff[(i, i)] -= 1.0;
        }
        diff.svd(false, false).singular_values.iter().cloned().fold(0.0, f64::max)
    }
}

/// Builds a chain `E^M -> E^N` injective on the finite working set.
///
/// `beta` bounds the operator deviation from the coordinate projection;
/// passing 0 forces the plain coordinate axes (still secant-checked).
pub fn secant_projection(
    points: &[Vec<f64>],
    target_dim: usize,
    beta: f64,
    seed: u64,
) -> Result<ProjectionChain> {
    if points.is_empty() {
        return Err(EmbedError::EmptyInput);
    }
    let source_dim = points[0].len();
    if target_dim >= source_dim || target_dim == 0 {
        return Err(EmbedError::NoAxesToEliminate { from: source_dim, target: target_dim });
    }
    // The working set is a point set: exact duplicates denote one point.
    let mut working: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !working.iter().any(|q| q == p) {
            working.push(p.clone());
        }
    }
    let total_steps = source_dim - target_dim;
    let step_budget = beta / total_steps as f64;
    // 2 sin(theta/2) <= step budget keeps each rotation inside its share.
    let theta_max = 2.0 * (step_budget / 2.0).clamp(0.0, 1.0).asin();

    let mut steps = Vec::with_capacity(total_steps);
    for step_index in 0..total_steps {
        let dim = source_dim - step_index;
        let mut rng = stream(seed, "projection-step", step_index as u64);
        let mut threshold = SECANT_THRESHOLD;
        let step = loop {
            let mut accepted = None;
            for _ in 0..DRAWS_PER_THRESHOLD {
                let candidate = draw_step(&mut rng, dim, theta_max);
                if secant_ok(&working, &candidate, threshold) {
                    accepted = Some(candidate);
                    break;
                }
            }
            if let Some(step) = accepted {
                break step;
            }
            threshold /= 2.0;
            if threshold < SECANT_FLOOR {
                return Err(EmbedError::SecantCollapse { floor: SECANT_FLOOR });
            }
        };
        working = working.iter().map(|p| step.apply(p)).collect();
        steps.push(step);
    }

    let chain = ProjectionChain {
        steps,
        source_dim,
        target_dim,
        beta,
        secant_margin: 0.0,
    };
    // Final margin over the original distinct pairs under the composed map.
    let mut originals: Vec<Vec<f64>> = Vec::new();
    for p in points {
        if !originals.iter().any(|q| q == p) {
            originals.push(p.clone());
        }
    }
    let mut margin = f64::INFINITY;
    let images: Vec<Vec<f64>> = originals.iter().map(|p| chain.apply(p)).collect();
    for i in 0..originals.len() {
        for j in (i + 1)..originals.len() {
            let gap = distance(&images[i], &images[j]);
            let original = distance(&originals[i], &originals[j]);
            margin = margin.min(gap / original);
        }
    }
    if originals.len() < 2 {
        margin = 1.0;
    }
    Ok(ProjectionChain { secant_margin: margin, ..chain })
}

fn draw_step(rng: &mut ChaCha8Rng, dim: usize, theta_max: f64) -> Step {
    if theta_max == 0.0 {
        return Step { cos_theta: 1.0, sin_theta: 0.0, tilt: vec![0.0; dim] };
    }
    // Unit tilt orthogonal to the dropped axis. The full angular budget is
    // spent on every draw; separations of stacked collision pairs scale with
    // the angle, so smaller tilts only waste the operator allowance.
    let tilt = loop {
        let mut w: Vec<f64> = (0..dim - 1).map(|_| rng.random_range(-1.0..1.0)).collect();
        w.push(0.0);
        let norm = w.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-3 {
            for a in w.iter_mut() {
                *a /= norm;
            }
            break w;
        }
    };
    Step { cos_theta: theta_max.cos(), sin_theta: theta_max.sin(), tilt }
}

fn secant_ok(points: &[Vec<f64>], step: &Step, threshold: f64) -> bool {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let pi = step.apply(&points[i]);
            let pj = step.apply(&points[j]);
            let ratio = distance(&pi, &pj) / distance(&points[i], &points[j]);
            if ratio < threshold {
                return false;
            }
        }
    }
    true
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_elimination_keeps_orthogonal_difference() {
        // Two points differing in the first coordinate; drop the third axis.
        let points = vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]];
        let chain = secant_projection(&points, 2, 0.0, 1).unwrap();
        assert_eq!(chain.secant_margin(), 1.0);
        assert_eq!(chain.apply(&[1.0, 0.0, 0.0]), vec![1.0, 0.0]);
    }

    #[test]
    fn circle_projects_injectively_to_the_plane() {
        let points: Vec<Vec<f64>> = (0..64)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 64.0;
                vec![t.cos(), t.sin(), 0.0]
            })
            .collect();
        let chain = secant_projection(&points, 2, 0.0, 1).unwrap();
        assert!(chain.secant_margin() > 0.9);
    }

    #[test]
    fn random_cloud_chain_to_half_dimension() {
        use rand::Rng;
        let mut rng = stream(3, "test-cloud", 0);
        let points: Vec<Vec<f64>> =
            (0..50).map(|_| (0..10).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
        let chain = secant_projection(&points, 5, 0.1, 5).unwrap();
        // Brute-force pairwise check after construction.
        let mut margin = f64::INFINITY;
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let gap = distance(&chain.apply(&points[i]), &chain.apply(&points[j]));
                margin = margin.min(gap / distance(&points[i], &points[j]));
            }
        }
        assert!(margin > 0.0);
        assert!((chain.secant_margin() - margin).abs() <= 1e-12);
    }

    #[test]
    fn deviation_respects_budget_and_norm_bound() {
        use rand::Rng;
        let mut rng = stream(8, "test-cloud", 1);
        let points: Vec<Vec<f64>> =
            (0..30).map(|_| (0..6).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
        for beta in [0.0, 0.05, 0.3] {
            let chain = secant_projection(&points, 3, beta, 21).unwrap();
            assert!(chain.operator_norm() <= 1.0 + 1e-12);
            assert!(
                chain.deviation_from_coordinate_projection() <= beta + 1e-12,
                "beta {beta}"
            );
        }
    }

    #[test]
    fn chain_never_expands_sampled_pairs() {
        use rand::Rng;
        let mut rng = stream(13, "test-cloud", 2);
        let points: Vec<Vec<f64>> =
            (0..40).map(|_| (0..8).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
        let chain = secant_projection(&points, 3, 0.2, 2).unwrap();
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let before = distance(&points[i], &points[j]);
                let after = distance(&chain.apply(&points[i]), &chain.apply(&points[j]));
                assert!(after <= before * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn duplicate_points_collapse_to_one_working_point() {
        let points = vec![vec![1.0, 2.0, 3.0]; 4];
        let chain = secant_projection(&points, 2, 0.1, 9).unwrap();
        assert_eq!(chain.secant_margin(), 1.0);
    }
}

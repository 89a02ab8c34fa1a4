//! Tubular-neighborhood length control.
//!
//! The experiment compares the path metric of a sampled surface against the
//! path metric of a sampled tube around it. The surface samples are a subset
//! of the tube cloud with the same connectivity radius, so the tube distance
//! never exceeds the surface distance (a subgraph can only shorten paths).
//! In the other direction the tube distance recovers the surface distance up
//! to the loss factor `1 - eta` and an explicit discretization slack
//! proportional to the ambient sampling density.

use metric_core::euclidean_distance;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cloud::{circle_cloud, segment_cloud, EmbeddedCloud};
use crate::error::{LabError, Result};

/// Tube radius values per surface sample and the loss parameter.
#[derive(Debug, Clone)]
pub struct TubeSpec {
    delta: Vec<f64>,
    eta: f64,
}

impl TubeSpec {
    pub fn new(delta: Vec<f64>, eta: f64) -> Result<Self> {
        for (index, &d) in delta.iter().enumerate() {
            if !(d > 0.0 && d < eta) {
                return Err(LabError::BadTubeRadius { index, delta: d, eta });
            }
        }
        Ok(TubeSpec { delta, eta })
    }

    pub fn uniform(delta: f64, eta: f64, samples: usize) -> Result<Self> {
        Self::new(vec![delta; samples], eta)
    }

    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.delta.iter().map(|d| d * factor).collect(), self.eta)
    }
}

/// Catalog of smooth embedded models for the experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceModel {
    /// Unit circle in the `z = 0` plane of `E^3`.
    Circle,
    /// Unit segment on the x-axis of `E^3`.
    Segment,
}

impl SurfaceModel {
    pub fn parse(name: &str) -> Result<Self> {
        match name.trim() {
            "circle" => Ok(SurfaceModel::Circle),
            "segment" => Ok(SurfaceModel::Segment),
            other => Err(LabError::SubRiemannian(
                subriemannian::SubRiemannianError::UnknownModel(other.to_string()),
            )),
        }
    }

    /// Samples the model at pitch `density` with connectivity radius `2 * density`.
    pub fn sample(&self, density: f64) -> Result<EmbeddedCloud> {
        if !(density > 0.0) {
            return Err(LabError::BadDensity(density));
        }
        let radius = 2.0 * density;
        match self {
            SurfaceModel::Circle => {
                let count = (2.0 * std::f64::consts::PI / density).ceil() as usize;
                circle_cloud(count.max(8), radius)
            }
            SurfaceModel::Segment => {
                let count = (1.0 / density).ceil() as usize + 1;
                segment_cloud(count.max(2), radius)
            }
        }
    }
}

/// Per-pair distances in the surface and tube graphs.
#[derive(Debug, Clone, Copy)]
pub struct TubePair {
    pub source: usize,
    pub target: usize,
    pub surface_distance: f64,
    pub tube_distance: f64,
}

#[derive(Debug, Clone)]
pub struct TubeReport {
    pub pairs: Vec<TubePair>,
    /// Largest `d_tube - d_surface`; nonpositive by the subgraph argument.
    pub max_upper_excess: f64,
    /// Largest `(1 - eta) d_surface - d_tube - slack`; nonpositive on pass.
    pub max_lower_gap: f64,
    /// Discretization slack `2 * density` entering the lower inequality.
    pub slack: f64,
    pub ambient_count: usize,
    pub pass: bool,
}

impl TubeReport {
    pub fn pairs_tested(&self) -> usize {
        self.pairs.len()
    }

    /// The binding gap reported to summaries.
    pub fn max_gap(&self) -> f64 {
        self.max_upper_excess.max(self.max_lower_gap)
    }
}

/// Ambient tube cloud: a jittered grid restricted to the tube.
///
/// The same grid and jitter are reused for every radius scale, so shrinking
/// the radii selects a subset of the points.
pub fn tube_points(
    surface: &EmbeddedCloud,
    spec: &TubeSpec,
    density: f64,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    if !(density > 0.0) {
        return Err(LabError::BadDensity(density));
    }
    if spec.delta().len() != surface.len() {
        return Err(LabError::TubeSizeMismatch {
            expected: surface.len(),
            got: spec.delta().len(),
        });
    }
    let dim = surface.dim();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    // The candidate box depends on eta, not on the radii, so specs sharing
    // eta and seed draw the same jittered grid and shrinking the radii
    // selects a subset of the points.
    let reach = spec.eta();
    for p in surface.points() {
        for axis in 0..dim {
            lo[axis] = lo[axis].min(p[axis] - reach - density);
            hi[axis] = hi[axis].max(p[axis] + reach + density);
        }
    }
    let counts: Vec<usize> = (0..dim)
        .map(|axis| ((hi[axis] - lo[axis]) / density).ceil() as usize + 1)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jitter = 0.25 * density;
    let mut points = Vec::new();
    let mut index = vec![0usize; dim];
    loop {
        let candidate: Vec<f64> = (0..dim)
            .map(|axis| {
                lo[axis] + index[axis] as f64 * density + rng.random_range(-jitter..jitter)
            })
            .collect();
        let inside = surface
            .points()
            .iter()
            .zip(spec.delta().iter())
            .any(|(p, &d)| euclidean_distance(p, &candidate) < d);
        if inside {
            points.push(candidate);
        }
        // Odometer over the grid box.
        let mut axis = dim;
        let mut done = true;
        while axis > 0 {
            axis -= 1;
            if index[axis] + 1 < counts[axis] {
                index[axis] += 1;
                done = false;
                break;
            }
            index[axis] = 0;
        }
        if done {
            break;
        }
    }
    Ok(points)
}

/// Runs the comparison for `pair_count` random surface pairs.
pub fn tube_comparison(
    surface: &EmbeddedCloud,
    spec: &TubeSpec,
    density: f64,
    pair_count: usize,
    seed: u64,
) -> Result<TubeReport> {
    let ambient = tube_points(surface, spec, density, seed)?;
    tube_comparison_with_ambient(surface, spec, density, pair_count, seed, &ambient)
}

/// Comparison against an explicit ambient cloud (exposed for monotonicity
/// experiments that reuse one jittered grid across radius scales).
pub fn tube_comparison_with_ambient(
    surface: &EmbeddedCloud,
    spec: &TubeSpec,
    density: f64,
    pair_count: usize,
    seed: u64,
    ambient: &[Vec<f64>],
) -> Result<TubeReport> {
    let n_surface = surface.len();
    // Tube cloud = surface samples followed by the ambient points, so the
    // surface graph is the induced subgraph on the leading block.
    let mut tube_points_all = surface.points().to_vec();
    tube_points_all.extend(ambient.iter().cloned());
    let tube_cloud = EmbeddedCloud::new(tube_points_all, surface.radius())?;
    let tube_graph = tube_cloud.proximity_graph()?;
    let surface_graph = surface.proximity_graph()?;

    // Group the random pairs by source so each source costs one search.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let source_count = pair_count.clamp(1, 10);
    let per_source = pair_count.div_ceil(source_count);
    let mut pairs = Vec::new();
    let mut max_upper_excess = f64::NEG_INFINITY;
    let mut max_lower_gap = f64::NEG_INFINITY;
    let slack = 2.0 * density;
    for _ in 0..source_count {
        let source = rng.random_range(0..n_surface);
        let surface_dist = surface_graph.dijkstra(source)?;
        let tube_dist = tube_graph.dijkstra(source)?;
        for _ in 0..per_source {
            if pairs.len() >= pair_count {
                break;
            }
            let target = rng.random_range(0..n_surface);
            let d_surface = surface_dist[target]
                .ok_or(LabError::Disconnected { a: source, b: target })?;
            let d_tube = tube_dist[target]
                .ok_or(LabError::Disconnected { a: source, b: target })?;
            max_upper_excess = max_upper_excess.max(d_tube - d_surface);
            max_lower_gap =
                max_lower_gap.max((1.0 - spec.eta()) * d_surface - d_tube - slack);
            pairs.push(TubePair {
                source,
                target,
                surface_distance: d_surface,
                tube_distance: d_tube,
            });
        }
    }
    let pass = max_upper_excess <= 0.0 && max_lower_gap <= 0.0;
    Ok(TubeReport {
        pairs,
        max_upper_excess,
        max_lower_gap,
        slack,
        ambient_count: ambient.len(),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_tube_tracks_surface_distance() {
        let surface = SurfaceModel::Segment.sample(0.05).unwrap();
        let spec = TubeSpec::uniform(0.04, 0.1, surface.len()).unwrap();
        let report = tube_comparison(&surface, &spec, 0.05, 30, 11).unwrap();
        assert!(report.pass, "upper {} lower {}", report.max_upper_excess, report.max_lower_gap);
        assert!(report.max_upper_excess <= 0.0);
    }

    #[test]
    fn circle_tube_inequalities_hold() {
        let surface = SurfaceModel::Circle.sample(0.05).unwrap();
        let spec = TubeSpec::uniform(0.04, 0.1, surface.len()).unwrap();
        let report = tube_comparison(&surface, &spec, 0.05, 40, 3).unwrap();
        assert!(report.pass, "upper {} lower {}", report.max_upper_excess, report.max_lower_gap);
        assert_eq!(report.pairs_tested(), 40);
    }

    #[test]
    fn shrinking_the_tube_never_shortens_paths() {
        let surface = SurfaceModel::Circle.sample(0.08).unwrap();
        let spec = TubeSpec::uniform(0.06, 0.15, surface.len()).unwrap();
        let density = 0.08;
        let seed = 5;
        let ambient_full = tube_points(&surface, &spec, density, seed).unwrap();
        let half = spec.scaled(0.5).unwrap();
        // Same jittered grid filtered by the smaller radii: a subset.
        let ambient_half = tube_points(&surface, &half, density, seed).unwrap();
        assert!(ambient_half.len() <= ambient_full.len());
        for p in &ambient_half {
            assert!(ambient_full.contains(p));
        }
        let full =
            tube_comparison_with_ambient(&surface, &spec, density, 25, seed, &ambient_full)
                .unwrap();
        let shrunk =
            tube_comparison_with_ambient(&surface, &half, density, 25, seed, &ambient_half)
                .unwrap();
        for (a, b) in full.pairs.iter().zip(shrunk.pairs.iter()) {
            assert_eq!((a.source, a.target), (b.source, b.target));
            assert!(b.tube_distance >= a.tube_distance - 1e-12);
        }
    }

    #[test]
    fn bad_tube_radii_rejected() {
        assert!(TubeSpec::uniform(0.2, 0.1, 4).is_err());
        assert!(TubeSpec::uniform(0.0, 0.1, 4).is_err());
        assert!(TubeSpec::uniform(0.05, 0.1, 4).is_ok());
    }
}

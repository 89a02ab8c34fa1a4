//! Path-isometry defect and the isometry-onto-image comparison.
//!
//! A map preserves lengths when every curve's image polyline has the length
//! the source metric assigns to the curve. The defect is the worst relative
//! length discrepancy over a curve family; geodesic chains maximize the
//! sensitivity to length loss, so generated families mix them with random
//! waypoint chains.

use metric_core::{
    curve_length, CurveAmbient, LengthGraph, PointMap, PolygonalCurve,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cloud::{induced_path_metric, EmbeddedCloud};
use crate::error::{LabError, Result};

/// Worst-case relative length discrepancy over a curve family.
#[derive(Debug, Clone)]
pub struct DefectReport {
    /// Max over curves of `|L_image - L_source| / L_source`.
    pub max_relative_defect: f64,
    /// Max over curves of the signed excess `L_image - L_source`.
    pub max_signed_excess: f64,
    pub curves_tested: usize,
    /// Zero-length curves skipped with notice.
    pub skipped: usize,
}

/// Measures the length defect of `f` over label curves in its domain.
pub fn path_isometry_defect(f: &PointMap, curves: &[PolygonalCurve]) -> Result<DefectReport> {
    if curves.is_empty() {
        return Err(LabError::NoCurves);
    }
    let space = f.domain();
    let mut max_relative: f64 = 0.0;
    let mut max_signed = f64::NEG_INFINITY;
    let mut tested = 0usize;
    let mut skipped = 0usize;
    for curve in curves {
        let source_length = curve_length(curve, CurveAmbient::Metric(space))?;
        if source_length == 0.0 {
            skipped += 1;
            continue;
        }
        let labels = match curve {
            PolygonalCurve::Labels(labels) => labels,
            PolygonalCurve::Points(_) => {
                return Err(LabError::Metric(
                    metric_core::MetricError::CoordinatesInMetricAmbient,
                ))
            }
        };
        let image: Vec<Vec<f64>> = labels.iter().map(|&x| f.image(x).to_vec()).collect();
        let image_length =
            curve_length(&PolygonalCurve::Points(image), CurveAmbient::Euclidean)?;
        max_relative = max_relative.max((image_length - source_length).abs() / source_length);
        max_signed = max_signed.max(image_length - source_length);
        tested += 1;
    }
    if tested == 0 {
        return Err(LabError::AllCurvesDegenerate);
    }
    Ok(DefectReport {
        max_relative_defect: max_relative,
        max_signed_excess: max_signed,
        curves_tested: tested,
        skipped,
    })
}

/// Curve family: geodesic chains between random pairs plus random waypoint
/// chains, a fixed count per run.
pub fn curve_family(graph: &LengthGraph, count: usize, seed: u64) -> Result<Vec<PolygonalCurve>> {
    let n = graph.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut curves = Vec::with_capacity(count);
    let geodesic_count = count / 2;
    while curves.len() < geodesic_count {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        let (_, path) = graph
            .shortest_path(a, b)
            .map_err(|_| LabError::Disconnected { a, b })?;
        curves.push(PolygonalCurve::Labels(path));
    }
    while curves.len() < count {
        let length = rng.random_range(3..=8);
        let waypoints: Vec<usize> = (0..length).map(|_| rng.random_range(0..n)).collect();
        curves.push(PolygonalCurve::Labels(waypoints));
    }
    Ok(curves)
}

/// Report of the isometry-onto-image comparison at a sampled scale.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    /// Max over pairs of `|d_source - d_image| / d_source`.
    pub max_relative_gap: f64,
    pub pairs_tested: usize,
}

/// Compares the source metric against the path metric the image cloud
/// induces at connectivity radius `radius`.
///
/// The image must embed the points faithfully enough to carry a metric:
/// coincident image vectors are rejected as degenerate.
pub fn isometry_equivalence_check(
    f: &PointMap,
    radius: f64,
) -> Result<EquivalenceReport> {
    let space = f.domain();
    let n = space.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if f.image(i) == f.image(j) {
                return Err(LabError::DegenerateImage { a: i, b: j });
            }
        }
    }
    let cloud = EmbeddedCloud::new(f.vectors().to_vec(), radius)?;
    let image_metric = induced_path_metric(&cloud)?;
    let mut max_gap: f64 = 0.0;
    let mut pairs = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            let source = space.dist(i, j);
            let image = image_metric.dist(i, j);
            max_gap = max_gap.max((source - image).abs() / source);
            pairs += 1;
        }
    }
    Ok(EquivalenceReport { max_relative_gap: max_gap, pairs_tested: pairs })
}

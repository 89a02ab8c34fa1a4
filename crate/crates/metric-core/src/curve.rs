//! Polygonal curves and their lengths.
//!
//! Curves are finite waypoint sequences, either labels into a finite metric
//! space or coordinates in `E^k`. The length is the sum of consecutive
//! waypoint distances, which makes it additive under concatenation at a
//! shared endpoint.

use crate::error::{MetricError, Result};
use crate::space::{euclidean_distance, FiniteMetricSpace};

/// Waypoints of a polygonal curve.
#[derive(Debug, Clone, PartialEq)]
pub enum PolygonalCurve {
    /// Waypoints are point labels of a finite metric space.
    Labels(Vec<usize>),
    /// Waypoints are coordinates in Euclidean space.
    Points(Vec<Vec<f64>>),
}

/// The ambient in which a curve is measured.
#[derive(Debug, Clone, Copy)]
pub enum CurveAmbient<'a> {
    Metric(&'a FiniteMetricSpace),
    Euclidean,
}

impl PolygonalCurve {
    pub fn waypoint_count(&self) -> usize {
        match self {
            PolygonalCurve::Labels(w) => w.len(),
            PolygonalCurve::Points(w) => w.len(),
        }
    }

    /// Concatenates two curves sharing `self`'s last waypoint as `other`'s first.
    pub fn concat(&self, other: &PolygonalCurve) -> Option<PolygonalCurve> {
        match (self, other) {
            (PolygonalCurve::Labels(a), PolygonalCurve::Labels(b)) => {
                if a.last() != b.first() {
                    return None;
                }
                let mut w = a.clone();
                w.extend_from_slice(&b[1..]);
                Some(PolygonalCurve::Labels(w))
            }
            (PolygonalCurve::Points(a), PolygonalCurve::Points(b)) => {
                if a.last() != b.first() {
                    return None;
                }
                let mut w = a.clone();
                w.extend_from_slice(&b[1..]);
                Some(PolygonalCurve::Points(w))
            }
            _ => None,
        }
    }
}

/// Length of a polygonal curve in the given ambient; 0 for a single waypoint.
pub fn curve_length(curve: &PolygonalCurve, ambient: CurveAmbient<'_>) -> Result<f64> {
    match (curve, ambient) {
        (PolygonalCurve::Labels(w), CurveAmbient::Metric(space)) => {
            if w.is_empty() {
                return Err(MetricError::EmptyCurve);
            }
            for &label in w {
                if label >= space.len() {
                    return Err(MetricError::UnresolvableWaypoint { label, n: space.len() });
                }
            }
            Ok(w.windows(2).map(|pair| space.dist(pair[0], pair[1])).sum())
        }
        (PolygonalCurve::Points(w), CurveAmbient::Euclidean) => {
            if w.is_empty() {
                return Err(MetricError::EmptyCurve);
            }
            let dim = w[0].len();
            for p in w {
                if p.len() != dim {
                    return Err(MetricError::DimensionMismatch { expected: dim, got: p.len() });
                }
            }
            Ok(w.windows(2).map(|pair| euclidean_distance(&pair[0], &pair[1])).sum())
        }
        (PolygonalCurve::Labels(_), CurveAmbient::Euclidean) => {
            Err(MetricError::LabelsInEuclideanAmbient)
        }
        (PolygonalCurve::Points(_), CurveAmbient::Metric(_)) => {
            Err(MetricError::CoordinatesInMetricAmbient)
        }
    }
}

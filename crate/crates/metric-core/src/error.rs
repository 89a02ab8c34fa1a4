use thiserror::Error;

/// Errors raised by metric-space construction and the operations on them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("distance table is not square: expected {expected} entries per row, row {row} has {got}")]
    NotSquare { row: usize, expected: usize, got: usize },

    #[error("diagonal entry d[{i}][{i}] = {value} must be exactly 0")]
    NonzeroDiagonal { i: usize, value: f64 },

    #[error("distance table not symmetric at ({i},{j}): {dij} vs {dji}")]
    NotSymmetric { i: usize, j: usize, dij: f64, dji: f64 },

    #[error("off-diagonal distance d[{i}][{j}] = {value} must be strictly positive")]
    NonpositiveDistance { i: usize, j: usize, value: f64 },

    #[error("non-finite distance d[{i}][{j}] = {value}")]
    NonFiniteDistance { i: usize, j: usize, value: f64 },

    #[error("triangle inequality violated: d[{i}][{k}] = {dik} > d[{i}][{j}] + d[{j}][{k}] = {sum} (excess {excess:e})")]
    TriangleViolation { i: usize, j: usize, k: usize, dik: f64, sum: f64, excess: f64 },

    #[error("empty space: at least one point is required")]
    EmptySpace,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("edge ({a},{b}) has non-positive or non-finite length {length}")]
    BadEdgeLength { a: usize, b: usize, length: f64 },

    #[error("edge endpoint {v} out of range (graph has {n} vertices)")]
    EdgeOutOfRange { v: usize, n: usize },

    #[error("graph is disconnected: no path between {a} and {b}")]
    Disconnected { a: usize, b: usize },

    #[error("waypoint label {label} cannot be resolved (space has {n} points)")]
    UnresolvableWaypoint { label: usize, n: usize },

    #[error("curve has no waypoints")]
    EmptyCurve,

    #[error("waypoint dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("curve waypoints are labels but the ambient is Euclidean space")]
    LabelsInEuclideanAmbient,

    #[error("curve waypoints are coordinates but the ambient is a finite metric space")]
    CoordinatesInMetricAmbient,

    #[error("point map must assign one vector to each of the {n} points, got {got}")]
    WrongImageCount { n: usize, got: usize },

    #[error("image vector for point {label} has dimension {got}, expected {expected}")]
    ImageDimensionMismatch { label: usize, expected: usize, got: usize },

    #[error("map is not injective: points {a} and {b} share the image vector")]
    NotInjective { a: usize, b: usize },

    #[error("chain step bound epsilon must be positive, got {0}")]
    NonpositiveEpsilon(f64),

    #[error("point index {0} out of range")]
    PointOutOfRange(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, MetricError>;

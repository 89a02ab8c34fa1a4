use metric_core::MetricError;
use subriemannian::SubRiemannianError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("connectivity radius must be positive, got {0}")]
    BadRadius(f64),

    #[error("cloud is empty")]
    EmptyCloud,

    #[error("point {index} has dimension {got}, expected {expected}")]
    PointDimensionMismatch { index: usize, expected: usize, got: usize },

    #[error("proximity graph is disconnected: no path between points {a} and {b}")]
    Disconnected { a: usize, b: usize },

    #[error("degenerate image: points {a} and {b} share the same image vector")]
    DegenerateImage { a: usize, b: usize },

    #[error("tube radius values must satisfy 0 < delta < eta; offending sample {index}: delta {delta}, eta {eta}")]
    BadTubeRadius { index: usize, delta: f64, eta: f64 },

    #[error("tube spec carries {got} radius values for {expected} surface samples")]
    TubeSizeMismatch { expected: usize, got: usize },

    #[error("sampling density must be positive, got {0}")]
    BadDensity(f64),

    #[error("no curves supplied")]
    NoCurves,

    #[error("all supplied curves have zero length")]
    AllCurvesDegenerate,

    #[error("center displacement must be positive, got {0}")]
    BadDisplacement(f64),

    #[error(transparent)]
    Metric(#[from] MetricError),

    #[error(transparent)]
    SubRiemannian(#[from] SubRiemannianError),
}

pub type Result<T> = std::result::Result<T, LabError>;

use metric_core::MetricError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error("epsilon must be positive, got {0}")]
    NonpositiveEpsilon(f64),

    #[error("delta must be positive, got {0}")]
    NonpositiveDelta(f64),

    #[error("cover defect: point {point} has no positive bump value")]
    CoverDefect { point: usize },

    #[error("need one target per cover set: {sets} sets, {targets} targets")]
    TargetCountMismatch { sets: usize, targets: usize },

    #[error("target dimension {targets} does not match requested dimension {expected}")]
    TargetDimensionMismatch { targets: usize, expected: usize },

    #[error("general-position sampling exhausted {rounds} rounds below margin {threshold:e}")]
    MarginRejection { rounds: usize, threshold: f64 },

    #[error("target dimension {target} must be below the source dimension {from}")]
    NoAxesToEliminate { from: usize, target: usize },

    #[error("secant threshold collapsed below {floor:e}: the point set has nearly coincident points")]
    SecantCollapse { floor: f64 },

    #[error("stability radius precondition violated: need gap {gap} < b {b} < epsilon {epsilon}")]
    StabilityPrecondition { gap: f64, b: f64, epsilon: f64 },

    #[error("epsilon schedule must be strictly decreasing and end below the minimal positive distance {min_dist}")]
    BadSchedule { min_dist: f64 },

    #[error("schedule exhausted without exact injectivity; residual gap {residual}")]
    ScheduleExhausted { residual: f64 },

    #[error("dimension parameter must give a positive target dimension")]
    BadDimension,

    #[error("empty point collection")]
    EmptyInput,

    #[error(transparent)]
    Metric(#[from] MetricError),
}

pub type Result<T> = std::result::Result<T, EmbedError>;

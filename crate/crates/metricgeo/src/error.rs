use thiserror::Error;

/// Errors surfaced as a single machine-readable line with exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("validation: {0}")]
    Validation(String),

    #[error("io: {path}: {message}")]
    Io { path: String, message: String },

    #[error("metric: {0}")]
    Metric(#[from] metric_core::MetricError),

    #[error("grid: {0}")]
    SubRiemannian(#[from] subriemannian::SubRiemannianError),

    #[error("embed: {0}")]
    Embed(#[from] lipembed::EmbedError),

    #[error("lab: {0}")]
    Lab(#[from] isometry_lab::LabError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

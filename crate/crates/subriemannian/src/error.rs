use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SubRiemannianError {
    #[error("axis {axis} has degenerate bounds [{lo}, {hi}]")]
    DegenerateBox { axis: usize, lo: f64, hi: f64 },

    #[error("resolution must be positive, got {0}")]
    BadResolution(f64),

    #[error("axis {axis} span {span} is not an integer multiple of the resolution {h}")]
    IncommensurateBox { axis: usize, span: f64, h: f64 },

    #[error("stencil radius must be at least 1")]
    BadStencilRadius,

    #[error("coordinate {value} on axis {axis} is not a grid point")]
    NotOnGrid { axis: usize, value: f64 },

    #[error("coordinate {value} on axis {axis} is outside [{lo}, {hi}]")]
    OutOfBounds { axis: usize, value: f64, lo: f64, hi: f64 },

    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown model name {0:?}")]
    UnknownModel(String),

    #[error("model {model} requires a {required}-dimensional grid, got {got}")]
    ModelDimension { model: &'static str, required: usize, got: usize },

    #[error("tabulated structure needs one map per grid point: expected {expected}, got {got}")]
    TabulatedSizeMismatch { expected: usize, got: usize },

    #[error("tabulated map at grid point {index} has shape {rows}x{cols}, expected {n}x{r}")]
    TabulatedShapeMismatch { index: usize, rows: usize, cols: usize, n: usize, r: usize },

    #[error("no path between the requested grid points (vertices {a} and {b}); \
             with the exact-cost graph this can mean the horizontal skeleton does not join them")]
    Disconnected { a: usize, b: usize },

    #[error("approximation index must be at least 1")]
    BadApproximantIndex,

    #[error("g1 scale must be positive, got {0}")]
    BadG1Scale(f64),

    #[error("waypoints must be planar (dimension 2), got dimension {0}")]
    NonPlanarWaypoint(usize),

    #[error("p-norm exponent must be at least 1, got {0}")]
    BadNormExponent(f64),
}

pub type Result<T> = std::result::Result<T, SubRiemannianError>;

//! Foundational metric-space types and operations: validated finite metric
//! spaces, length graphs and their shortest-path metrics, polygonal curve
//! lengths, Lipschitz norms, injectivity gaps, distortion, and chain pull
//! metrics.

pub mod curve;
pub mod error;
pub mod graph;
pub mod io;
pub mod point_map;
pub mod pull;
pub mod space;

pub use curve::{curve_length, CurveAmbient, PolygonalCurve};
pub use error::{MetricError, Result};
pub use graph::{shortest_path_metric, LengthGraph};
pub use io::{format_distance_matrix, format_point_map, parse_distance_matrix, parse_point_map};
pub use point_map::{LipNorm, PointMap};
pub use pull::{pull_metric, pull_metric_from, pull_profile, PullValue};
pub use space::{euclidean_distance, euclidean_norm, FiniteMetricSpace, TRIANGLE_REL_TOL};

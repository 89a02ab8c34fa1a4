//! Plain-text formats for distance matrices and point maps.
//!
//! Distance matrix: optional leading `#` comment lines, then a line with the
//! integer point count `n`, then `n` lines of `n` space-separated decimals.
//! The loader validates every metric-space invariant.
//!
//! Point map: optional leading `#` comment lines, then one line per point of
//! the form `label v1 ... vN`, labels `0..n` in order.

use std::sync::Arc;

use crate::error::{MetricError, Result};
use crate::point_map::PointMap;
use crate::space::FiniteMetricSpace;

/// Parses a distance matrix in the text format.
pub fn parse_distance_matrix(text: &str) -> Result<FiniteMetricSpace> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (line_no, first) = lines.next().ok_or(MetricError::Parse {
        line: 0,
        message: "empty input".to_string(),
    })?;
    let n: usize = first.trim().parse().map_err(|_| MetricError::Parse {
        line: line_no + 1,
        message: format!("expected point count, got {first:?}"),
    })?;
    if n == 0 {
        return Err(MetricError::EmptySpace);
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line_no, line) = lines.next().ok_or(MetricError::Parse {
            line: 0,
            message: format!("expected {n} matrix rows"),
        })?;
        let row: Result<Vec<f64>> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>().map_err(|_| MetricError::Parse {
                    line: line_no + 1,
                    message: format!("bad decimal {tok:?}"),
                })
            })
            .collect();
        rows.push(row?);
    }
    FiniteMetricSpace::new(rows)
}

/// Writes a distance matrix in the text format with a version header.
pub fn format_distance_matrix(space: &FiniteMetricSpace) -> String {
    let n = space.len();
    let mut out = String::from("# distance-matrix v1\n");
    out.push_str(&format!("{n}\n"));
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format!("{}", space.dist(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a point map over the given domain.
pub fn parse_point_map(text: &str, domain: Arc<FiniteMetricSpace>) -> Result<PointMap> {
    let n = domain.len();
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut dim: Option<usize> = None;
    for (line_no, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let label: usize = tokens
            .next()
            .unwrap()
            .parse()
            .map_err(|_| MetricError::Parse {
                line: line_no + 1,
                message: "expected integer label".to_string(),
            })?;
        if label != vectors.len() {
            return Err(MetricError::Parse {
                line: line_no + 1,
                message: format!("labels must appear in order; expected {}, got {label}", vectors.len()),
            });
        }
        let vector: Result<Vec<f64>> = tokens
            .map(|tok| {
                tok.parse::<f64>().map_err(|_| MetricError::Parse {
                    line: line_no + 1,
                    message: format!("bad decimal {tok:?}"),
                })
            })
            .collect();
        let vector = vector?;
        if let Some(d) = dim {
            if vector.len() != d {
                return Err(MetricError::ImageDimensionMismatch {
                    label,
                    expected: d,
                    got: vector.len(),
                });
            }
        } else {
            dim = Some(vector.len());
        }
        vectors.push(vector);
    }
    let dim = dim.ok_or(MetricError::Parse { line: 0, message: "no rows".to_string() })?;
    PointMap::new(domain, vectors, dim)
}

/// Writes a point map in the text format with a version header.
pub fn format_point_map(map: &PointMap) -> String {
    let mut out = String::from("# pointmap v1\n");
    for (label, v) in map.vectors().iter().enumerate() {
        let coords: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
        out.push_str(&format!("{label} {}\n", coords.join(" ")));
    }
    out
}

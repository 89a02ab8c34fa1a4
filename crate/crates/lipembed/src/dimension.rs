//! Box-counting dimension estimate. A convenience only: the embedding
//! contracts take the dimension parameter as explicit input.

use metric_core::FiniteMetricSpace;

use crate::cover::build_cover;
use crate::error::Result;

/// Least-squares slope of `log(net size)` against `log(1 / scale)`.
pub fn box_counting_dimension(space: &FiniteMetricSpace, scales: &[f64]) -> Result<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &scale in scales {
        let cover = build_cover(space, scale)?;
        xs.push((1.0 / scale).ln());
        ys.push((cover.set_count() as f64).ln());
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let covariance: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let variance: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    Ok(if variance > 0.0 { covariance / variance } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_samples_estimate_near_one() {
        let points: Vec<Vec<f64>> = (0..512).map(|i| vec![i as f64 / 511.0]).collect();
        let space = FiniteMetricSpace::from_euclidean_points(&points).unwrap();
        let dim = box_counting_dimension(&space, &[0.4, 0.2, 0.1, 0.05]).unwrap();
        assert!((dim - 1.0).abs() < 0.25, "estimate {dim}");
    }
}

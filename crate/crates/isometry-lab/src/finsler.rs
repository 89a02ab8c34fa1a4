//! The linear obstruction to path isometries from non-Euclidean norms.
//!
//! A length-preserving map differentiates (almost everywhere) to a linear
//! map that carries the source norm to the Euclidean norm on every
//! direction. The defect functional
//!
//! ```text
//! defect(A) = max over unit-norm directions v of | |Av|_2 - 1 |
//! ```
//!
//! vanishes for some linear `A` exactly when the norm is realizable by a
//! scalar product. The search minimizes the functional over linear maps by
//! seeding scaled coordinate inclusions and descending with a halving
//! pattern search; for norms whose unit ball is not an ellipse the minimum
//! stays boundedly positive.

use subriemannian::NormFieldPlanar;

use crate::error::Result;

/// Directions sampled on the unit sphere of the norm.
pub const DIRECTION_COUNT: usize = 720;

#[derive(Debug, Clone)]
pub struct FinslerDefect {
    /// Minimal defect found within the budget.
    pub defect: f64,
    /// Row-major `k x 2` entries of the best linear map.
    pub best_map: Vec<f64>,
    /// Defect evaluations actually spent.
    pub evaluations: usize,
}

/// Minimizes the defect functional over linear maps `R^2 -> R^k`.
///
/// `budget` bounds the number of defect evaluations.
pub fn linear_finsler_defect(
    norm: NormFieldPlanar,
    k: usize,
    budget: usize,
) -> Result<FinslerDefect> {
    let directions = unit_norm_directions(norm);
    let mut evaluations = 0usize;
    let evaluate = |map: &[f64], evaluations: &mut usize| -> f64 {
        *evaluations += 1;
        defect_of(map, k, &directions)
    };

    // Scaled coordinate inclusions seed the search. Among conformal maps
    // c * I the best scale balances the extreme Euclidean lengths of the
    // unit-norm directions, so that candidate is seeded exactly alongside a
    // coarse scale sweep.
    let inclusion = |c: f64| {
        let mut map = vec![0.0; 2 * k];
        map[0] = c;
        if k >= 2 {
            map[3] = c;
        } else {
            map[1] = c;
        }
        map
    };
    let mut best_map = inclusion(1.0);
    let mut best = evaluate(&best_map, &mut evaluations);
    let r_min = directions
        .iter()
        .map(|v| (v[0] * v[0] + v[1] * v[1]).sqrt())
        .fold(f64::INFINITY, f64::min);
    let r_max = directions
        .iter()
        .map(|v| (v[0] * v[0] + v[1] * v[1]).sqrt())
        .fold(0.0, f64::max);
    let balanced = inclusion(2.0 / (r_min + r_max));
    let balanced_value = evaluate(&balanced, &mut evaluations);
    if balanced_value < best {
        best = balanced_value;
        best_map = balanced;
    }
    let scale_steps = (budget / 20).clamp(16, 2000);
    for i in 0..scale_steps {
        let c = 0.5 + (i as f64 / (scale_steps - 1) as f64) * 1.0; // [0.5, 1.5]
        let candidate = inclusion(c);
        let value = evaluate(&candidate, &mut evaluations);
        if value < best {
            best = value;
            best_map = candidate;
        }
    }

    // Halving pattern search over all 2k parameters plus a global scaling
    // move; the functional is a max of kinks and stalls coordinate descent
    // at conformal optima without the scaling direction.
    let mut step = 0.25f64;
    while step > 1e-13 && evaluations < budget {
        let mut improved = false;
        for param in 0..2 * k {
            for sign in [1.0f64, -1.0] {
                if evaluations >= budget {
                    break;
                }
                let mut candidate = best_map.clone();
                candidate[param] += sign * step;
                let value = evaluate(&candidate, &mut evaluations);
                if value < best {
                    best = value;
                    best_map = candidate;
                    improved = true;
                }
            }
        }
        for sign in [1.0f64, -1.0] {
            if evaluations >= budget {
                break;
            }
            let factor = 1.0 + sign * step;
            let candidate: Vec<f64> = best_map.iter().map(|a| a * factor).collect();
            let value = evaluate(&candidate, &mut evaluations);
            if value < best {
                best = value;
                best_map = candidate;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(FinslerDefect { defect: best, best_map, evaluations })
}

/// Unit vectors of the norm, swept uniformly in angle before normalizing.
fn unit_norm_directions(norm: NormFieldPlanar) -> Vec<[f64; 2]> {
    (0..DIRECTION_COUNT)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / DIRECTION_COUNT as f64;
            let raw = [theta.cos(), theta.sin()];
            let length = norm.norm(raw);
            [raw[0] / length, raw[1] / length]
        })
        .collect()
}

fn defect_of(map: &[f64], k: usize, directions: &[[f64; 2]]) -> f64 {
    let mut worst: f64 = 0.0;
    for v in directions {
        let mut norm_sq = 0.0;
        for row in 0..k {
            let value = map[2 * row] * v[0] + map[2 * row + 1] * v[1];
            norm_sq += value * value;
        }
        worst = worst.max((norm_sq.sqrt() - 1.0).abs());
    }
    worst
}

/// Analytic upper-bound certificate for the conformal candidate `c * I`.
pub fn conformal_certificate(norm: NormFieldPlanar) -> Option<f64> {
    match norm {
        NormFieldPlanar::Euclidean => Some(0.0),
        // On the sup ball the Euclidean length of unit vectors spans
        // [1, sqrt(2)]; the balanced scale c = 2 / (1 + sqrt(2)) gives
        // defect 1 - c. The L1 ball is that square rotated and scaled.
        NormFieldPlanar::Sup | NormFieldPlanar::L1 => {
            Some(1.0 - 2.0 / (1.0 + std::f64::consts::SQRT_2))
        }
        NormFieldPlanar::P(_) => None,
    }
}

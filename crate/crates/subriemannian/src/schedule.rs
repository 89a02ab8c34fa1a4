//! Monotone Riemannian approximants of the horizontal cost.
//!
//! The approximation starts from a base quadratic form `g1(v) = c |v|^2`
//! chosen below the cost, and advances per direction through
//!
//! ```text
//! w_1 = g1(v)
//! w_m = max{ w_(m-1), min{ (1 - 2^-m) cost(v), m g1(v) } }    (m >= 2)
//! ```
//!
//! Each step stays finite (an infinite cost drops the first argument of the
//! min), is nondecreasing in `m`, and is pinched between `g1` and the cost.
//! Directions with finite cost saturate once `m g1` clears the cost, so the
//! weights converge to `(1 - 2^-m) cost -> cost`; directions with infinite
//! cost grow without bound like `m g1`.

use crate::error::{Result, SubRiemannianError};
use crate::structure::{Cost, HorizontalStructure};

/// Which approximant to use: a finite index or the cost itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproximantIndex {
    Finite(u32),
    Infinity,
}

impl std::fmt::Display for ApproximantIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ApproximantIndex::Finite(m) => write!(f, "{m}"),
            ApproximantIndex::Infinity => write!(f, "infinity"),
        }
    }
}

/// The base-form coefficient together with the approximation index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproximantSchedule {
    g1_scale: f64,
    m: ApproximantIndex,
}

/// Headroom between the spectral lower bound and the base form.
const G1_MARGIN: f64 = 1.0 - 1e-6;

impl ApproximantSchedule {
    /// Chooses `c = (1 - 1e-6) / Lambda` with `Lambda` the largest eigenvalue
    /// of `sigma sigma^T` over the grid, which guarantees `g1 <= cost`.
    pub fn for_structure(structure: &HorizontalStructure, m: ApproximantIndex) -> Result<Self> {
        if let ApproximantIndex::Finite(0) = m {
            return Err(SubRiemannianError::BadApproximantIndex);
        }
        let lambda = structure.gram_lambda_max();
        if !(lambda > 0.0) {
            return Err(SubRiemannianError::BadG1Scale(lambda));
        }
        Ok(ApproximantSchedule { g1_scale: G1_MARGIN / lambda, m })
    }

    /// Explicit base-form coefficient; the caller owns the `g1 <= cost` bound.
    pub fn with_g1_scale(g1_scale: f64, m: ApproximantIndex) -> Result<Self> {
        if !(g1_scale > 0.0) || !g1_scale.is_finite() {
            return Err(SubRiemannianError::BadG1Scale(g1_scale));
        }
        if let ApproximantIndex::Finite(0) = m {
            return Err(SubRiemannianError::BadApproximantIndex);
        }
        Ok(ApproximantSchedule { g1_scale, m })
    }

    pub fn g1_scale(&self) -> f64 {
        self.g1_scale
    }

    pub fn index(&self) -> ApproximantIndex {
        self.m
    }

    pub fn with_index(&self, m: ApproximantIndex) -> Self {
        ApproximantSchedule { g1_scale: self.g1_scale, m }
    }

    /// The base form `g1(v) = c |v|^2`.
    #[inline]
    pub fn g1(&self, v: &[f64]) -> f64 {
        self.g1_scale * v.iter().map(|a| a * a).sum::<f64>()
    }

    /// Weight of a direction at this schedule's index given its cost.
    ///
    /// Finite indices iterate the recurrence from the base case; infinity
    /// returns the cost itself (infinite off the horizontal range).
    pub fn weight(&self, cost: Cost, g1: f64) -> Cost {
        match self.m {
            ApproximantIndex::Infinity => cost,
            ApproximantIndex::Finite(m) => Cost::Finite(weight_chain(cost, g1, m)),
        }
    }
}

/// One recurrence step: `max{w_prev, min{(1 - 2^-m) cost, m g1}}`.
///
/// `m` must be at least 2 and `w_prev` the weight at index `m - 1`.
pub fn approximant_weight(cost: Cost, g1: f64, m: u32, w_prev: f64) -> f64 {
    debug_assert!(m >= 2);
    let clamp = match cost {
        Cost::Finite(rho) => ((1.0 - 0.5f64.powi(m as i32)) * rho).min(m as f64 * g1),
        Cost::Infinite => m as f64 * g1,
    };
    w_prev.max(clamp)
}

/// The weight at index `m` obtained by iterating from `w_1 = g1`.
pub fn weight_chain(cost: Cost, g1: f64, m: u32) -> f64 {
    debug_assert!(m >= 1);
    // Both arguments of the min are nondecreasing in the index, so the chain
    // collapses to a single clamp at the final index.
    if m == 1 {
        return g1;
    }
    approximant_weight(cost, g1, m, g1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridDomain;
    use crate::structure::{model_catalog, CatalogModel, HorizontalStructure};

    #[test]
    fn base_case_is_g1() {
        assert_eq!(weight_chain(Cost::Finite(9.0), 2.0, 1), 2.0);
    }

    #[test]
    fn forced_arithmetic_with_infinite_cost() {
        // cost = infinity, g1 = 1, w_prev = 4, m = 5: max{4, min{inf, 5}} = 5.
        assert_eq!(approximant_weight(Cost::Infinite, 1.0, 5, 4.0), 5.0);
    }

    #[test]
    fn forced_arithmetic_with_finite_cost() {
        // cost = 4, g1 = 1, w_prev = 2, m = 3: max{2, min{3.5, 3}} = 3.
        assert_eq!(approximant_weight(Cost::Finite(4.0), 1.0, 3, 2.0), 3.0);
    }

    #[test]
    fn chain_matches_step_by_step_iteration() {
        for &cost in &[Cost::Finite(3.7), Cost::Finite(0.2), Cost::Infinite] {
            for &g1 in &[0.1, 1.0, 2.5] {
                let mut w = g1;
                for m in 2..=48u32 {
                    w = approximant_weight(cost, g1, m, w);
                    assert_eq!(w, weight_chain(cost, g1, m), "cost={cost:?} g1={g1} m={m}");
                }
            }
        }
    }

    #[test]
    fn chain_is_monotone_and_pinched() {
        for &cost in &[Cost::Finite(5.0), Cost::Finite(0.05), Cost::Infinite] {
            let g1 = 0.04;
            let mut prev = weight_chain(cost, g1, 1);
            for m in 2..=64u32 {
                let w = weight_chain(cost, g1, m);
                assert!(w >= prev);
                assert!(w >= g1);
                if let Cost::Finite(rho) = cost {
                    assert!(w <= rho);
                }
                prev = w;
            }
        }
    }

    #[test]
    fn finite_directions_saturate() {
        let g1 = 1.0;
        let cost = Cost::Finite(4.0);
        let w = weight_chain(cost, g1, 40);
        assert!((w - 4.0 * (1.0 - 0.5f64.powi(40))).abs() < 1e-15);
    }

    #[test]
    fn schedule_base_form_stays_below_cost() {
        let grid = GridDomain::new(
            vec![(-1.25, 1.25), (-1.25, 1.25), (-0.25, 1.25)],
            0.125,
            2,
        )
        .unwrap();
        let s = model_catalog("heisenberg", grid).unwrap();
        let schedule =
            ApproximantSchedule::for_structure(&s, ApproximantIndex::Infinity).unwrap();
        for flat in (0..s.grid().len()).step_by(97) {
            for offset in s.grid().stencil() {
                let v = s.grid().displacement(offset);
                if let Cost::Finite(rho) = s.cost(flat, &v) {
                    assert!(schedule.g1(&v) <= rho);
                }
            }
        }
    }

    #[test]
    fn per_direction_weights_nondecreasing_in_m_and_bounded_by_cost() {
        let grid = GridDomain::new(vec![(-1.0, 1.0), (-1.0, 1.0)], 0.25, 2).unwrap();
        let s = HorizontalStructure::from_model(CatalogModel::Grushin, grid).unwrap();
        let schedule =
            ApproximantSchedule::for_structure(&s, ApproximantIndex::Infinity).unwrap();
        for flat in 0..s.grid().len() {
            for offset in s.grid().stencil() {
                let v = s.grid().displacement(offset);
                let cost = s.cost(flat, &v);
                let g1 = schedule.g1(&v);
                let mut prev = weight_chain(cost, g1, 1);
                for m in 2..=32 {
                    let w = weight_chain(cost, g1, m);
                    assert!(w >= prev - 0.0);
                    if let Cost::Finite(rho) = cost {
                        assert!(w <= rho * (1.0 + 1e-12));
                    }
                    prev = w;
                }
            }
        }
    }
}

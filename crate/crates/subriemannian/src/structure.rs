//! Horizontal structures: bundle morphisms into the tangent space and the
//! induced cost on tangent vectors.
//!
//! A structure assigns to each point `p` a linear map `sigma_p` from an
//! auxiliary inner-product space `R^r` into `T_p M = R^n`. The cost of a
//! tangent vector is
//!
//! ```text
//! cost_p(v) = inf { |u|^2 : sigma_p u = v },
//! ```
//!
//! finite exactly when `v` lies in the range of `sigma_p`, in which case the
//! infimum is attained by the minimal-norm preimage. Range membership is
//! decided by the least-squares residual against a scale-aware tolerance.
//!
//! Catalog models carry closed-form evaluators valid at arbitrary (off-grid)
//! coordinates, which edge-midpoint quadrature relies on; tabulated
//! structures know `sigma` only at grid points.

use nalgebra::{DMatrix, DVector};

use crate::error::{Result, SubRiemannianError};
use crate::grid::GridDomain;

/// Relative least-squares residual below which a vector counts as lying in
/// the range of `sigma_p`.
pub const RANGE_REL_TOL: f64 = 1e-9;

/// Cost of a tangent vector: finite on the horizontal range, infinite off it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cost {
    Finite(f64),
    Infinite,
}

impl Cost {
    pub fn finite(self) -> Option<f64> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cost::Finite(_))
    }
}

/// Built-in models with closed-form frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogModel {
    /// `sigma = identity` on `R^n`: the flat Euclidean structure.
    Euclidean(usize),
    /// Heisenberg group frame `X = (1, 0, -y/2)`, `Y = (0, 1, x/2)` at `(x, y, t)`.
    Heisenberg,
    /// Grushin plane frame `(1, 0)` and `(0, x)` at `(x, y)`; degenerate on `x = 0`.
    Grushin,
}

impl CatalogModel {
    pub fn tangent_dimension(&self) -> usize {
        match self {
            CatalogModel::Euclidean(n) => *n,
            CatalogModel::Heisenberg => 3,
            CatalogModel::Grushin => 2,
        }
    }

    pub fn name(&self) -> String {
        match self {
            CatalogModel::Euclidean(n) => format!("euclidean({n})"),
            CatalogModel::Heisenberg => "heisenberg".to_string(),
            CatalogModel::Grushin => "grushin".to_string(),
        }
    }

    /// Parses `euclidean(n)`, `heisenberg`, or `grushin`.
    pub fn parse(name: &str) -> Result<Self> {
        let trimmed = name.trim();
        if trimmed == "heisenberg" {
            return Ok(CatalogModel::Heisenberg);
        }
        if trimmed == "grushin" {
            return Ok(CatalogModel::Grushin);
        }
        if let Some(rest) = trimmed.strip_prefix("euclidean(") {
            if let Some(inner) = rest.strip_suffix(')') {
                if let Ok(n) = inner.trim().parse::<usize>() {
                    if n >= 1 {
                        return Ok(CatalogModel::Euclidean(n));
                    }
                }
            }
        }
        Err(SubRiemannianError::UnknownModel(name.to_string()))
    }

    /// The frame matrix `sigma` at a coordinate point.
    pub fn sigma(&self, point: &[f64]) -> DMatrix<f64> {
        match self {
            CatalogModel::Euclidean(n) => DMatrix::identity(*n, *n),
            CatalogModel::Heisenberg => {
                let (x, y) = (point[0], point[1]);
                DMatrix::from_column_slice(3, 2, &[1.0, 0.0, -y / 2.0, 0.0, 1.0, x / 2.0])
            }
            CatalogModel::Grushin => {
                let x = point[0];
                DMatrix::from_column_slice(2, 2, &[1.0, 0.0, 0.0, x])
            }
        }
    }

    /// Closed-form cost at arbitrary coordinates.
    pub fn cost_at(&self, point: &[f64], v: &[f64]) -> Cost {
        let tol = RANGE_REL_TOL * (1.0 + norm(v));
        match self {
            CatalogModel::Euclidean(_) => Cost::Finite(v.iter().map(|a| a * a).sum()),
            CatalogModel::Heisenberg => {
                // range(sigma) is the plane with normal (y/2, -x/2, 1); the
                // minimal-norm preimage of an in-range v is (v0, v1).
                let (x, y) = (point[0], point[1]);
                let defect = v[2] + y / 2.0 * v[0] - x / 2.0 * v[1];
                let normal = (1.0 + (x * x + y * y) / 4.0).sqrt();
                if defect.abs() / normal <= tol {
                    Cost::Finite(v[0] * v[0] + v[1] * v[1])
                } else {
                    Cost::Infinite
                }
            }
            CatalogModel::Grushin => {
                let x = point[0];
                if x != 0.0 {
                    let u1 = v[1] / x;
                    Cost::Finite(v[0] * v[0] + u1 * u1)
                } else if v[1].abs() <= tol {
                    Cost::Finite(v[0] * v[0])
                } else {
                    Cost::Infinite
                }
            }
        }
    }

    /// Largest eigenvalue of `sigma sigma^T` at a point.
    fn gram_lambda_max(&self, point: &[f64]) -> f64 {
        match self {
            CatalogModel::Euclidean(_) => 1.0,
            // Eigenvalues of sigma sigma^T are {0, 1, 1 + (x^2+y^2)/4}.
            CatalogModel::Heisenberg => 1.0 + (point[0] * point[0] + point[1] * point[1]) / 4.0,
            CatalogModel::Grushin => (point[0] * point[0]).max(1.0),
        }
    }
}

/// How `sigma` is known: analytically or as a per-grid-point table.
#[derive(Debug, Clone)]
pub enum SigmaField {
    Analytic(CatalogModel),
    Tabulated { maps: Vec<DMatrix<f64>>, aux_dim: usize },
}

/// A grid domain together with the field of bundle morphisms.
#[derive(Debug, Clone)]
pub struct HorizontalStructure {
    grid: GridDomain,
    sigma: SigmaField,
}

impl HorizontalStructure {
    pub fn from_model(model: CatalogModel, grid: GridDomain) -> Result<Self> {
        let required = model.tangent_dimension();
        if grid.dimension() != required {
            return Err(SubRiemannianError::ModelDimension {
                model: match model {
                    CatalogModel::Euclidean(_) => "euclidean",
                    CatalogModel::Heisenberg => "heisenberg",
                    CatalogModel::Grushin => "grushin",
                },
                required,
                got: grid.dimension(),
            });
        }
        Ok(HorizontalStructure { grid, sigma: SigmaField::Analytic(model) })
    }

    pub fn from_table(grid: GridDomain, maps: Vec<DMatrix<f64>>, aux_dim: usize) -> Result<Self> {
        if maps.len() != grid.len() {
            return Err(SubRiemannianError::TabulatedSizeMismatch {
                expected: grid.len(),
                got: maps.len(),
            });
        }
        let n = grid.dimension();
        for (index, map) in maps.iter().enumerate() {
            if map.nrows() != n || map.ncols() != aux_dim {
                return Err(SubRiemannianError::TabulatedShapeMismatch {
                    index,
                    rows: map.nrows(),
                    cols: map.ncols(),
                    n,
                    r: aux_dim,
                });
            }
        }
        Ok(HorizontalStructure { grid, sigma: SigmaField::Tabulated { maps, aux_dim } })
    }

    pub fn grid(&self) -> &GridDomain {
        &self.grid
    }

    pub fn sigma_field(&self) -> &SigmaField {
        &self.sigma
    }

    pub fn model(&self) -> Option<CatalogModel> {
        match &self.sigma {
            SigmaField::Analytic(model) => Some(*model),
            SigmaField::Tabulated { .. } => None,
        }
    }

    /// Cost of tangent vector `v` at the grid vertex `flat`.
    pub fn cost(&self, flat: usize, v: &[f64]) -> Cost {
        match &self.sigma {
            SigmaField::Analytic(model) => model.cost_at(&self.grid.point(flat), v),
            SigmaField::Tabulated { maps, .. } => least_squares_cost(&maps[flat], v),
        }
    }

    /// Cost at arbitrary coordinates; available for analytic fields only.
    pub fn cost_at_coords(&self, point: &[f64], v: &[f64]) -> Option<Cost> {
        match &self.sigma {
            SigmaField::Analytic(model) => Some(model.cost_at(point, v)),
            SigmaField::Tabulated { .. } => None,
        }
    }

    /// Largest eigenvalue of `sigma sigma^T` over all grid points.
    pub fn gram_lambda_max(&self) -> f64 {
        match &self.sigma {
            SigmaField::Analytic(model) => {
                let mut best = 0.0f64;
                for flat in 0..self.grid.len() {
                    best = best.max(model.gram_lambda_max(&self.grid.point(flat)));
                }
                best
            }
            SigmaField::Tabulated { maps, .. } => {
                let mut best = 0.0f64;
                for map in maps {
                    let gram = map * map.transpose();
                    let eigen = gram.symmetric_eigenvalues();
                    best = best.max(eigen.iter().cloned().fold(0.0, f64::max));
                }
                best
            }
        }
    }
}

/// Generic cost through the SVD least-squares solution.
pub fn least_squares_cost(sigma: &DMatrix<f64>, v: &[f64]) -> Cost {
    let rhs = DVector::from_column_slice(v);
    let svd = sigma.clone().svd(true, true);
    let u = svd.solve(&rhs, 1e-12).expect("svd solve with computed factors");
    let residual = (sigma * &u - &rhs).norm();
    if residual <= RANGE_REL_TOL * (1.0 + rhs.norm()) {
        Cost::Finite(u.norm_squared())
    } else {
        Cost::Infinite
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Builds a catalog structure by name over the given grid.
pub fn model_catalog(name: &str, grid: GridDomain) -> Result<HorizontalStructure> {
    HorizontalStructure::from_model(CatalogModel::parse(name)?, grid)
}

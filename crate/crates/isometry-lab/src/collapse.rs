//! Central collapse of Lipschitz maps on the Heisenberg group.
//!
//! Any Lipschitz map to Euclidean space moves central displacements much
//! less than their sub-Riemannian cost: with `f` the coordinate identity,
//! the ratio
//!
//! ```text
//! |f(g x) - f(x)| / d_cc(g x, x),   g = (0, 0, t) central,
//! ```
//!
//! tends to zero as `t` does, since the Euclidean gap is `t` while the
//! sub-Riemannian distance scales like `sqrt(t)`. The experiment measures
//! the ratio at grid-representable displacements with the grid solver in
//! place of `d_cc`.

use subriemannian::{
    cc_distance, model_catalog, ApproximantIndex, ApproximantSchedule, GridDomain,
    HorizontalStructure,
};

use crate::error::{LabError, Result};

/// Grid parameters for the collapse experiment.
#[derive(Debug, Clone)]
pub struct CollapseConfig {
    pub resolution: f64,
    pub stencil_radius: u32,
    pub index: ApproximantIndex,
    /// Box bounds; the default covers the central geodesics up to `t = 1`.
    pub bounds: Vec<(f64, f64)>,
}

impl Default for CollapseConfig {
    fn default() -> Self {
        CollapseConfig {
            resolution: 1.0 / 32.0,
            stencil_radius: 2,
            index: ApproximantIndex::Infinity,
            bounds: vec![(-1.25, 1.25), (-1.25, 1.25), (-0.25, 1.25)],
        }
    }
}

impl CollapseConfig {
    pub fn structure(&self) -> Result<HorizontalStructure> {
        let grid = GridDomain::new(self.bounds.clone(), self.resolution, self.stencil_radius)?;
        Ok(model_catalog("heisenberg", grid)?)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CollapseSample {
    pub displacement: f64,
    /// Euclidean image gap of the coordinate identity: the displacement.
    pub euclidean_gap: f64,
    pub cc_distance: f64,
    pub ratio: f64,
}

/// Measures the collapse ratio at one central displacement.
pub fn central_collapse_ratio(t: f64, config: &CollapseConfig) -> Result<CollapseSample> {
    if !(t > 0.0) {
        return Err(LabError::BadDisplacement(t));
    }
    let structure = config.structure()?;
    let schedule = ApproximantSchedule::for_structure(&structure, config.index)?;
    let origin = [0.0, 0.0, 0.0];
    let target = [0.0, 0.0, t];
    let d = cc_distance(&structure, &schedule, &origin, &target)?;
    Ok(CollapseSample { displacement: t, euclidean_gap: t, cc_distance: d, ratio: t / d })
}

/// Ratios along a displacement sequence, flagging the monotone trend.
#[derive(Debug, Clone)]
pub struct CollapseProfile {
    pub samples: Vec<CollapseSample>,
    /// Ratios nonincreasing along decreasing displacements.
    pub monotone: bool,
}

pub fn collapse_profile(ts: &[f64], config: &CollapseConfig) -> Result<CollapseProfile> {
    let mut samples = Vec::with_capacity(ts.len());
    for &t in ts {
        samples.push(central_collapse_ratio(t, config)?);
    }
    let mut ordered = samples.clone();
    ordered.sort_by(|a, b| b.displacement.partial_cmp(&a.displacement).unwrap());
    let monotone = ordered.windows(2).all(|w| w[1].ratio <= w[0].ratio * (1.0 + 1e-12));
    Ok(CollapseProfile { samples, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_uses_the_graph_distance() {
        let config = CollapseConfig { resolution: 1.0 / 16.0, ..Default::default() };
        let sample = central_collapse_ratio(0.25, &config).unwrap();
        assert_eq!(sample.euclidean_gap, 0.25);
        assert!(sample.cc_distance > 0.0);
        assert!((sample.ratio - 0.25 / sample.cc_distance).abs() < 1e-15);
    }

    #[test]
    fn off_grid_displacement_rejected() {
        let config = CollapseConfig { resolution: 1.0 / 16.0, ..Default::default() };
        let err = central_collapse_ratio(0.013, &config);
        assert!(err.is_err());
    }

    #[test]
    fn nonpositive_displacement_rejected() {
        let config = CollapseConfig::default();
        assert!(matches!(
            central_collapse_ratio(0.0, &config),
            Err(LabError::BadDisplacement(_))
        ));
    }
}

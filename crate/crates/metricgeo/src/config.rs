//! Run configuration: structured key-value text with strict validation.
//!
//! A config file names one command and carries exactly one matching
//! parameter section. Unknown keys are rejected with the offending name;
//! numeric parameters are validated against the owning operation's
//! preconditions before anything runs.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use subriemannian::ApproximantIndex;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Ccdist,
    Monotone,
    Embed,
    VerifyTube,
    Pull,
    Defect,
    Collapse,
}

impl CommandName {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandName::Ccdist => "ccdist",
            CommandName::Monotone => "monotone",
            CommandName::Embed => "embed",
            CommandName::VerifyTube => "verify-tube",
            CommandName::Pull => "pull",
            CommandName::Defect => "defect",
            CommandName::Collapse => "collapse",
        }
    }
}

/// Approximation index in configs: a positive integer or `"infinity"`.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum IndexValue {
    Finite(u32),
    Named(String),
}

impl IndexValue {
    pub fn resolve(&self) -> Result<ApproximantIndex> {
        match self {
            IndexValue::Finite(m) if *m >= 1 => Ok(ApproximantIndex::Finite(*m)),
            IndexValue::Finite(m) => {
                Err(CliError::Validation(format!("approximation index must be >= 1, got {m}")))
            }
            IndexValue::Named(name) if name == "infinity" => Ok(ApproximantIndex::Infinity),
            IndexValue::Named(name) => Err(CliError::Validation(format!(
                "approximation index must be a positive integer or \"infinity\", got {name:?}"
            ))),
        }
    }

    pub fn infinity() -> Self {
        IndexValue::Named("infinity".to_string())
    }
}

fn default_resolution() -> f64 {
    1.0 / 32.0
}

fn default_stencil_radius() -> u32 {
    2
}

fn default_index() -> IndexValue {
    IndexValue::infinity()
}

fn default_pair_count() -> usize {
    100
}

fn default_curve_count() -> usize {
    100
}

fn default_budget() -> usize {
    1_000_000
}

fn default_finsler_dim() -> usize {
    2
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    /// Catalog model name; alternatively supply a sigma table.
    #[serde(default)]
    pub model: Option<String>,
    /// Path to a tabulated frame field (one matrix per grid point).
    #[serde(default)]
    pub sigma_table: Option<PathBuf>,
    #[serde(default = "default_resolution")]
    pub resolution: f64,
    #[serde(default = "default_stencil_radius")]
    pub stencil_radius: u32,
    /// Axis bounds; omitted means the model's default box (required with a
    /// sigma table).
    #[serde(default)]
    pub bounds: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    pub g1_scale: Option<f64>,
}

impl GridSection {
    pub fn label(&self) -> String {
        match (&self.model, &self.sigma_table) {
            (Some(model), _) => model.clone(),
            (None, Some(path)) => format!("table:{}", path.display()),
            (None, None) => "unspecified".to_string(),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CcdistSection {
    #[serde(flatten)]
    pub grid: GridSection,
    #[serde(default = "default_index")]
    pub m: IndexValue,
    pub pairs: Vec<(Vec<f64>, Vec<f64>)>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MonotoneSection {
    #[serde(flatten)]
    pub grid: GridSection,
    pub m_values: Vec<IndexValue>,
    pub pairs: Vec<(Vec<f64>, Vec<f64>)>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EmbedSection {
    /// Distance-matrix input path.
    pub input: PathBuf,
    #[serde(default)]
    pub m: Option<usize>,
    /// Explicit target dimension override (otherwise `2 m + 1`).
    #[serde(default)]
    pub dimension: Option<usize>,
    /// Epsilon schedule; omitted means a geometric default.
    #[serde(default)]
    pub schedule: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyTubeSection {
    pub model: String,
    pub delta: f64,
    pub eta: f64,
    pub density: f64,
    #[serde(default = "default_pair_count")]
    pub pairs: usize,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PullSection {
    /// Distance-matrix input path.
    pub input: PathBuf,
    /// Point-map input path.
    pub map: PathBuf,
    pub epsilon: f64,
    /// Explicit index pairs; omitted means all pairs.
    #[serde(default)]
    pub pairs: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DefectSection {
    /// Cloud input path: one line per point, k coordinates.
    #[serde(default)]
    pub cloud: Option<PathBuf>,
    #[serde(default)]
    pub radius: Option<f64>,
    /// Point-map path; omitted means the identity on the cloud.
    #[serde(default)]
    pub map: Option<PathBuf>,
    #[serde(default = "default_curve_count")]
    pub curves: usize,
    /// Planar norm name; set to run the linear realizability experiment
    /// instead of a cloud defect run.
    #[serde(default)]
    pub norm: Option<String>,
    #[serde(default = "default_finsler_dim")]
    pub k: usize,
    #[serde(default = "default_budget")]
    pub budget: usize,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CollapseSection {
    pub displacements: Vec<f64>,
    #[serde(default = "default_resolution")]
    pub resolution: f64,
    #[serde(default = "default_stencil_radius")]
    pub stencil_radius: u32,
    #[serde(default = "default_index")]
    pub m: IndexValue,
    #[serde(default)]
    pub bounds: Option<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub command: CommandName,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub ccdist: Option<CcdistSection>,
    #[serde(default)]
    pub monotone: Option<MonotoneSection>,
    #[serde(default)]
    pub embed: Option<EmbedSection>,
    #[serde(default, rename = "verify-tube")]
    pub verify_tube: Option<VerifyTubeSection>,
    #[serde(default)]
    pub pull: Option<PullSection>,
    #[serde(default)]
    pub defect: Option<DefectSection>,
    #[serde(default)]
    pub collapse: Option<CollapseSection>,
}

/// Command-line overrides folded into the parsed file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub m: Option<IndexValue>,
    pub epsilon: Option<f64>,
    pub resolution: Option<f64>,
    pub eta: Option<f64>,
    pub delta: Option<f64>,
    pub norm: Option<String>,
}

/// A validated run configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: CommandName,
    pub seed: u64,
    pub output: PathBuf,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ccdist: Option<CcdistSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monotone: Option<MonotoneSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embed: Option<EmbedSection>,
    #[serde(rename = "verify-tube", skip_serializing_if = "Option::is_none")]
    pub verify_tube: Option<VerifyTubeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pull: Option<PullSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<DefectSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collapse: Option<CollapseSection>,
}

/// Parses and validates a config, applying overrides and defaults.
pub fn parse_config(text: &str, overrides: &Overrides) -> Result<RunConfig> {
    let file: ConfigFile =
        toml::from_str(text).map_err(|e| CliError::Config(single_line(&e.to_string())))?;
    let mut config = RunConfig {
        command: file.command,
        seed: overrides.seed.or(file.seed).unwrap_or(0),
        output: overrides
            .output
            .clone()
            .or(file.output)
            .unwrap_or_else(|| PathBuf::from("out")),
        ccdist: file.ccdist,
        monotone: file.monotone,
        embed: file.embed,
        verify_tube: file.verify_tube,
        pull: file.pull,
        defect: file.defect,
        collapse: file.collapse,
    };
    apply_overrides(&mut config, overrides);
    validate(&config)?;
    Ok(config)
}

fn apply_overrides(config: &mut RunConfig, overrides: &Overrides) {
    if let Some(section) = config.ccdist.as_mut() {
        if let Some(m) = &overrides.m {
            section.m = m.clone();
        }
        if let Some(r) = overrides.resolution {
            section.grid.resolution = r;
        }
    }
    if let Some(section) = config.monotone.as_mut() {
        if let Some(r) = overrides.resolution {
            section.grid.resolution = r;
        }
    }
    if let Some(section) = config.embed.as_mut() {
        if let Some(IndexValue::Finite(m)) = &overrides.m {
            section.m = Some(*m as usize);
        }
    }
    if let Some(section) = config.verify_tube.as_mut() {
        if let Some(eta) = overrides.eta {
            section.eta = eta;
        }
        if let Some(delta) = overrides.delta {
            section.delta = delta;
        }
    }
    if let Some(section) = config.pull.as_mut() {
        if let Some(epsilon) = overrides.epsilon {
            section.epsilon = epsilon;
        }
    }
    if let Some(section) = config.defect.as_mut() {
        if let Some(norm) = &overrides.norm {
            section.norm = Some(norm.clone());
        }
    }
    if let Some(section) = config.collapse.as_mut() {
        if let Some(m) = &overrides.m {
            section.m = m.clone();
        }
        if let Some(r) = overrides.resolution {
            section.resolution = r;
        }
    }
}

fn validate(config: &RunConfig) -> Result<()> {
    let sections = [
        config.ccdist.is_some(),
        config.monotone.is_some(),
        config.embed.is_some(),
        config.verify_tube.is_some(),
        config.pull.is_some(),
        config.defect.is_some(),
        config.collapse.is_some(),
    ];
    let expected_index = match config.command {
        CommandName::Ccdist => 0,
        CommandName::Monotone => 1,
        CommandName::Embed => 2,
        CommandName::VerifyTube => 3,
        CommandName::Pull => 4,
        CommandName::Defect => 5,
        CommandName::Collapse => 6,
    };
    for (index, present) in sections.iter().enumerate() {
        if index == expected_index && !present {
            return Err(CliError::Validation(format!(
                "missing [{}] section for the configured command",
                config.command.as_str()
            )));
        }
        if index != expected_index && *present {
            return Err(CliError::Validation(
                "config carries a parameter section for a different command".to_string(),
            ));
        }
    }
    match config.command {
        CommandName::Ccdist => {
            let section = config.ccdist.as_ref().unwrap();
            validate_grid(&section.grid)?;
            section.m.resolve()?;
            if section.pairs.is_empty() {
                return Err(CliError::Validation("ccdist needs at least one pair".into()));
            }
        }
        CommandName::Monotone => {
            let section = config.monotone.as_ref().unwrap();
            validate_grid(&section.grid)?;
            if section.m_values.is_empty() {
                return Err(CliError::Validation("monotone needs m_values".into()));
            }
            for m in &section.m_values {
                m.resolve()?;
            }
            if section.pairs.is_empty() {
                return Err(CliError::Validation("monotone needs at least one pair".into()));
            }
        }
        CommandName::Embed => {
            let section = config.embed.as_ref().unwrap();
            if section.m.is_none() && section.dimension.is_none() {
                return Err(CliError::Validation(
                    "embed needs m or an explicit dimension".into(),
                ));
            }
            if let Some(schedule) = &section.schedule {
                if schedule.iter().any(|&e| !(e > 0.0)) {
                    return Err(CliError::Validation(
                        "embed schedule entries must be positive".into(),
                    ));
                }
            }
        }
        CommandName::VerifyTube => {
            let section = config.verify_tube.as_ref().unwrap();
            isometry_lab::SurfaceModel::parse(&section.model)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            if !(section.delta > 0.0 && section.delta < section.eta) {
                return Err(CliError::Validation(format!(
                    "verify-tube needs 0 < delta < eta, got delta {} eta {}",
                    section.delta, section.eta
                )));
            }
            if !(section.density > 0.0) {
                return Err(CliError::Validation("verify-tube density must be positive".into()));
            }
            if section.pairs == 0 {
                return Err(CliError::Validation("verify-tube needs pairs >= 1".into()));
            }
        }
        CommandName::Pull => {
            let section = config.pull.as_ref().unwrap();
            if !(section.epsilon > 0.0) {
                return Err(CliError::Validation(format!(
                    "pull epsilon must be positive, got {}",
                    section.epsilon
                )));
            }
        }
        CommandName::Defect => {
            let section = config.defect.as_ref().unwrap();
            match (&section.norm, &section.cloud) {
                (Some(norm), None) => {
                    subriemannian::NormFieldPlanar::parse(norm)
                        .map_err(|e| CliError::Validation(e.to_string()))?;
                    if section.k == 0 {
                        return Err(CliError::Validation("defect k must be >= 1".into()));
                    }
                }
                (None, Some(_)) => {
                    let radius = section.radius.ok_or_else(|| {
                        CliError::Validation("defect cloud runs need a radius".into())
                    })?;
                    if !(radius > 0.0) {
                        return Err(CliError::Validation(
                            "defect radius must be positive".into(),
                        ));
                    }
                    if section.curves == 0 {
                        return Err(CliError::Validation("defect needs curves >= 1".into()));
                    }
                }
                (Some(_), Some(_)) => {
                    return Err(CliError::Validation(
                        "defect takes either a norm or a cloud, not both".into(),
                    ))
                }
                (None, None) => {
                    return Err(CliError::Validation(
                        "defect needs a norm or a cloud input".into(),
                    ))
                }
            }
        }
        CommandName::Collapse => {
            let section = config.collapse.as_ref().unwrap();
            if section.displacements.is_empty() {
                return Err(CliError::Validation("collapse needs displacements".into()));
            }
            for &t in &section.displacements {
                if !(t > 0.0) {
                    return Err(CliError::Validation(format!(
                        "collapse displacements must be positive, got {t}"
                    )));
                }
            }
            section.m.resolve()?;
            if !(section.resolution > 0.0) {
                return Err(CliError::Validation("collapse resolution must be positive".into()));
            }
        }
    }
    Ok(())
}

fn validate_grid(grid: &GridSection) -> Result<()> {
    match (&grid.model, &grid.sigma_table) {
        (Some(model), None) => {
            subriemannian::CatalogModel::parse(model)
                .map_err(|e| CliError::Validation(e.to_string()))?;
        }
        (None, Some(_)) => {
            if grid.bounds.is_none() {
                return Err(CliError::Validation(
                    "a sigma table needs explicit bounds".into(),
                ));
            }
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "give a model or a sigma table, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Validation("a model or sigma table is required".into()))
        }
    }
    if !(grid.resolution > 0.0) {
        return Err(CliError::Validation(format!(
            "resolution must be positive, got {}",
            grid.resolution
        )));
    }
    if grid.stencil_radius == 0 {
        return Err(CliError::Validation("stencil radius must be >= 1".into()));
    }
    if let Some(scale) = grid.g1_scale {
        if !(scale > 0.0) {
            return Err(CliError::Validation(format!(
                "g1_scale must be positive, got {scale}"
            )));
        }
    }
    Ok(())
}

fn single_line(message: &str) -> String {
    message.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Default box bounds per catalog model.
pub fn default_bounds(model: &subriemannian::CatalogModel) -> Vec<(f64, f64)> {
    match model {
        subriemannian::CatalogModel::Euclidean(n) => vec![(0.0, 2.0); *n],
        subriemannian::CatalogModel::Heisenberg => {
            vec![(-1.25, 1.25), (-1.25, 1.25), (-0.25, 1.25)]
        }
        subriemannian::CatalogModel::Grushin => vec![(-1.25, 1.25), (-1.25, 1.25)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_ccdist_defaults() {
        let text = r#"
command = "ccdist"

[ccdist]
model = "heisenberg"
pairs = [[[0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]]
"#;
        let config = parse_config(text, &Overrides::default()).unwrap();
        let section = config.ccdist.unwrap();
        assert_eq!(section.grid.resolution, 1.0 / 32.0);
        assert_eq!(section.grid.stencil_radius, 2);
        assert_eq!(section.m, IndexValue::infinity());
        assert_eq!(config.seed, 0);
    }

    #[test]
    fn unknown_key_rejected_by_name() {
        let text = r#"
command = "ccdist"
foo = 1

[ccdist]
model = "heisenberg"
pairs = []
"#;
        let err = parse_config(text, &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("foo"), "{err}");
    }

    #[test]
    fn negative_epsilon_rejected() {
        let text = r#"
command = "pull"

[pull]
input = "matrix.txt"
map = "map.txt"
epsilon = -1.0
"#;
        let err = parse_config(text, &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("epsilon"));
    }

    #[test]
    fn section_for_wrong_command_rejected() {
        let text = r#"
command = "ccdist"

[embed]
input = "matrix.txt"
m = 1
"#;
        assert!(parse_config(text, &Overrides::default()).is_err());
    }

    #[test]
    fn overrides_take_precedence() {
        let text = r#"
command = "ccdist"
seed = 3

[ccdist]
model = "heisenberg"
resolution = 0.125
pairs = [[[0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]]
"#;
        let overrides = Overrides {
            seed: Some(9),
            resolution: Some(0.25),
            m: Some(IndexValue::Finite(4)),
            ..Default::default()
        };
        let config = parse_config(text, &overrides).unwrap();
        assert_eq!(config.seed, 9);
        let section = config.ccdist.unwrap();
        assert_eq!(section.grid.resolution, 0.25);
        assert_eq!(section.m, IndexValue::Finite(4));
    }
}

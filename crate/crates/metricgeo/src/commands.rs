//! Command implementations: each builds its inputs, runs the owning
//! module, and emits CSV data plus JSON metrics.

use std::path::PathBuf;
use std::sync::Arc;

use serde_json::json;

use metric_core::{
    parse_distance_matrix, parse_point_map, pull_metric_from, PointMap, PullValue,
};
use subriemannian::{
    cc_distance, model_catalog, monotone_convergence_report, ApproximantIndex,
    ApproximantSchedule, CatalogModel, GridDomain, HorizontalStructure, NormFieldPlanar,
};

use isometry_lab::{
    collapse_profile, conformal_certificate, curve_family,
    induced_path_metric, linear_finsler_defect, path_isometry_defect, tube_comparison,
    CollapseConfig, EmbeddedCloud, SurfaceModel, TubeSpec,
};
use lipembed::{default_schedule, embed_with_dimension};

use crate::config::{
    default_bounds, CcdistSection, CollapseSection, DefectSection, EmbedSection, GridSection,
    MonotoneSection, PullSection, RunConfig, VerifyTubeSection,
};
use crate::error::{CliError, Result};
use crate::report::point_field;

/// Data files produced by a command.
pub struct CommandOutput {
    pub metrics: serde_json::Value,
    pub pass: Option<bool>,
    /// `(file name, contents)` pairs to write under the output directory.
    pub files: Vec<(String, String)>,
}

fn build_structure(grid: &GridSection) -> Result<HorizontalStructure> {
    match (&grid.model, &grid.sigma_table) {
        (Some(name), None) => {
            let model = CatalogModel::parse(name)?;
            let bounds = grid.bounds.clone().unwrap_or_else(|| default_bounds(&model));
            let domain = GridDomain::new(bounds, grid.resolution, grid.stencil_radius)?;
            Ok(model_catalog(name, domain)?)
        }
        (None, Some(path)) => {
            let text = read_input(path)?;
            let bounds = grid.bounds.clone().expect("validated");
            let domain = GridDomain::new(bounds, grid.resolution, grid.stencil_radius)?;
            parse_sigma_table(&text, domain)
        }
        _ => unreachable!("validated"),
    }
}

/// Sigma-table text format: optional `#` comments, a line `n r`, then one
/// line of `n * r` row-major entries per grid point in flat index order.
pub fn parse_sigma_table(
    text: &str,
    domain: GridDomain,
) -> Result<HorizontalStructure> {
    let mut lines = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| CliError::Validation("sigma table is empty".into()))?;
    let mut tokens = header.split_whitespace();
    let n: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| CliError::Validation("sigma table header needs `n r`".into()))?;
    let r: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| CliError::Validation("sigma table header needs `n r`".into()))?;
    if n != domain.dimension() {
        return Err(CliError::Validation(format!(
            "sigma table dimension {n} does not match the {}-dimensional grid",
            domain.dimension()
        )));
    }
    let mut maps = Vec::with_capacity(domain.len());
    for line in lines {
        let entries: std::result::Result<Vec<f64>, _> =
            line.split_whitespace().map(|t| t.parse::<f64>()).collect();
        let entries = entries
            .map_err(|_| CliError::Validation("sigma table has a bad decimal".into()))?;
        if entries.len() != n * r {
            return Err(CliError::Validation(format!(
                "sigma table row has {} entries, expected {}",
                entries.len(),
                n * r
            )));
        }
        maps.push(nalgebra::DMatrix::from_row_slice(n, r, &entries));
    }
    Ok(HorizontalStructure::from_table(domain, maps, r)?)
}

fn build_schedule(
    structure: &HorizontalStructure,
    g1_scale: Option<f64>,
    index: ApproximantIndex,
) -> Result<ApproximantSchedule> {
    Ok(match g1_scale {
        Some(scale) => ApproximantSchedule::with_g1_scale(scale, index)?,
        None => ApproximantSchedule::for_structure(structure, index)?,
    })
}

pub fn run_ccdist(_config: &RunConfig, section: &CcdistSection) -> Result<CommandOutput> {
    let structure = build_structure(&section.grid)?;
    let index = section.m.resolve()?;
    let schedule = build_schedule(&structure, section.grid.g1_scale, index)?;
    let mut csv = String::from("# metricgeo ccdist v1\np,q,m,distance\n");
    let mut rows = Vec::new();
    for (p, q) in &section.pairs {
        let d = cc_distance(&structure, &schedule, p, q)?;
        csv.push_str(&format!("{},{},{},{}\n", point_field(p), point_field(q), index, d));
        rows.push(json!({ "p": p, "q": q, "m": index.to_string(), "distance": d }));
    }
    Ok(CommandOutput {
        metrics: json!({
            "model": section.grid.label(),
            "resolution": section.grid.resolution,
            "stencil_radius": section.grid.stencil_radius,
            "distances": rows,
        }),
        pass: None,
        files: vec![("ccdist.csv".to_string(), csv)],
    })
}

pub fn run_monotone(_config: &RunConfig, section: &MonotoneSection) -> Result<CommandOutput> {
    let structure = build_structure(&section.grid)?;
    let indices: Vec<ApproximantIndex> = section
        .m_values
        .iter()
        .map(|m| m.resolve())
        .collect::<Result<_>>()?;
    let schedule = build_schedule(
        &structure,
        section.grid.g1_scale,
        *indices.first().expect("validated nonempty"),
    )?;
    let report = monotone_convergence_report(&structure, &schedule, &section.pairs, &indices)?;
    let mut csv = String::from("# metricgeo monotone v1\np,q,m,distance\n");
    for row in &report.rows {
        let value = match row.distance {
            Some(d) => format!("{d}"),
            None => "unreachable".to_string(),
        };
        csv.push_str(&format!(
            "{},{},{},{}\n",
            point_field(&row.pair.0),
            point_field(&row.pair.1),
            row.index,
            value
        ));
    }
    let pass = report.monotone && report.dominated;
    Ok(CommandOutput {
        metrics: json!({
            "model": section.grid.label(),
            "grid": {
                "resolution": section.grid.resolution,
                "stencil_radius": section.grid.stencil_radius,
            },
            "monotonicity": if report.monotone { "pass" } else { "fail" },
            "domination": if report.dominated { "pass" } else { "fail" },
            "rows": report.rows.len(),
        }),
        pass: Some(pass),
        files: vec![("monotone.csv".to_string(), csv)],
    })
}

pub fn run_embed(config: &RunConfig, section: &EmbedSection) -> Result<CommandOutput> {
    let text = read_input(&section.input)?;
    let space = Arc::new(parse_distance_matrix(&text)?);
    let dimension = match (section.dimension, section.m) {
        (Some(dim), _) => dim,
        (None, Some(m)) => 2 * m + 1,
        (None, None) => unreachable!("validated"),
    };
    let schedule = match &section.schedule {
        Some(schedule) => schedule.clone(),
        None => default_schedule(&space),
    };
    let report = embed_with_dimension(space, dimension, &schedule, config.seed)?;
    let map_text = metric_core::format_point_map(&report.map);
    Ok(CommandOutput {
        metrics: json!({
            "order_achieved": report.order_achieved,
            "margin": report.margin,
            "delta_final": report.delta_final,
            "lip_norm": {
                "sup_part": report.lip_norm.sup_part,
                "lip_part": report.lip_norm.lip_part,
                "total": report.lip_norm.total,
            },
            "distortion": { "expansion": report.distortion.0, "contraction": report.distortion.1 },
            "seed": report.seed,
            "iterations": report.iterations,
        }),
        pass: Some(report.delta_final == 0.0),
        files: vec![("pointmap.txt".to_string(), map_text)],
    })
}

pub fn run_verify_tube(config: &RunConfig, section: &VerifyTubeSection) -> Result<CommandOutput> {
    let model = SurfaceModel::parse(&section.model)?;
    let surface = model.sample(section.density)?;
    let spec = TubeSpec::uniform(section.delta, section.eta, surface.len())?;
    let report = tube_comparison(&surface, &spec, section.density, section.pairs, config.seed)?;
    Ok(CommandOutput {
        metrics: json!({
            "model": section.model,
            "pairs_tested": report.pairs_tested(),
            "max_gap": report.max_gap(),
            "max_upper_excess": report.max_upper_excess,
            "max_lower_gap": report.max_lower_gap,
            "slack": report.slack,
            "ambient_count": report.ambient_count,
            "pass": report.pass,
        }),
        pass: Some(report.pass),
        files: Vec::new(),
    })
}

pub fn run_pull(_config: &RunConfig, section: &PullSection) -> Result<CommandOutput> {
    let matrix_text = read_input(&section.input)?;
    let space = Arc::new(parse_distance_matrix(&matrix_text)?);
    let map_text = read_input(&section.map)?;
    let map = parse_point_map(&map_text, space.clone())?;
    let pairs: Vec<(usize, usize)> = match &section.pairs {
        Some(pairs) => pairs.clone(),
        None => space.pairs().collect(),
    };
    // One chain-graph search per distinct source covers all its pairs.
    let mut sources: Vec<usize> = pairs.iter().map(|&(p, _)| p).collect();
    sources.sort_unstable();
    sources.dedup();
    let mut csv = String::from("# metricgeo pull v1\np,q,epsilon,value\n");
    let mut rows = Vec::new();
    for &source in &sources {
        let values = pull_metric_from(&map, section.epsilon, source)?;
        for &(p, q) in pairs.iter().filter(|&&(p, _)| p == source) {
            if q >= space.len() {
                return Err(CliError::Validation(format!("pair index {q} out of range")));
            }
            match values[q] {
                PullValue::Finite(v) => {
                    csv.push_str(&format!("{p},{q},{},{v}\n", section.epsilon));
                    rows.push(json!({ "p": p, "q": q, "value": v }));
                }
                PullValue::Unreachable => {
                    return Err(CliError::Validation(format!(
                        "pull: points {p} and {q} are not joined by any chain at step bound {}",
                        section.epsilon
                    )));
                }
            }
        }
    }
    Ok(CommandOutput {
        metrics: json!({ "epsilon": section.epsilon, "pairs": rows.len(), "values": rows }),
        pass: None,
        files: vec![("pull.csv".to_string(), csv)],
    })
}

pub fn run_defect(config: &RunConfig, section: &DefectSection) -> Result<CommandOutput> {
    if let Some(norm_name) = &section.norm {
        let norm = NormFieldPlanar::parse(norm_name)?;
        let outcome = linear_finsler_defect(norm, section.k, section.budget)?;
        return Ok(CommandOutput {
            metrics: json!({
                "norm": norm_name,
                "k": section.k,
                "budget": section.budget,
                "evaluations": outcome.evaluations,
                "defect": outcome.defect,
                "certificate": conformal_certificate(norm),
                "best_map": outcome.best_map,
            }),
            pass: None,
            files: Vec::new(),
        });
    }
    let cloud_path = section.cloud.as_ref().expect("validated");
    let radius = section.radius.expect("validated");
    let cloud_text = read_input(cloud_path)?;
    let points = parse_cloud(&cloud_text)?;
    let cloud = EmbeddedCloud::new(points, radius)?;
    let space = Arc::new(induced_path_metric(&cloud)?);
    let map = match &section.map {
        Some(path) => {
            let text = read_input(path)?;
            parse_point_map(&text, space.clone())?
        }
        None => PointMap::new(space.clone(), cloud.points().to_vec(), cloud.dim())?,
    };
    let graph = cloud.proximity_graph()?;
    let curves = curve_family(&graph, section.curves, config.seed)?;
    let report = path_isometry_defect(&map, &curves)?;
    Ok(CommandOutput {
        metrics: json!({
            "max_relative_defect": report.max_relative_defect,
            "max_signed_excess": report.max_signed_excess,
            "curves_tested": report.curves_tested,
            "skipped": report.skipped,
        }),
        pass: None,
        files: Vec::new(),
    })
}

pub fn run_collapse(_config: &RunConfig, section: &CollapseSection) -> Result<CommandOutput> {
    let mut collapse_config = CollapseConfig {
        resolution: section.resolution,
        stencil_radius: section.stencil_radius,
        index: section.m.resolve()?,
        ..Default::default()
    };
    if let Some(bounds) = &section.bounds {
        collapse_config.bounds = bounds.clone();
    }
    let profile = collapse_profile(&section.displacements, &collapse_config)?;
    let mut csv = String::from("# metricgeo collapse v1\nt,euclidean_gap,cc_distance,ratio\n");
    let mut rows = Vec::new();
    for sample in &profile.samples {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            sample.displacement, sample.euclidean_gap, sample.cc_distance, sample.ratio
        ));
        rows.push(json!({
            "t": sample.displacement,
            "cc_distance": sample.cc_distance,
            "ratio": sample.ratio,
        }));
    }
    Ok(CommandOutput {
        metrics: json!({
            "samples": rows,
            "monotone": profile.monotone,
        }),
        pass: Some(profile.monotone),
        files: vec![("collapse.csv".to_string(), csv)],
    })
}

fn read_input(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Cloud text format: optional `#` comments, one line per point.
pub fn parse_cloud(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut points = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let point: std::result::Result<Vec<f64>, _> =
            trimmed.split_whitespace().map(|tok| tok.parse::<f64>()).collect();
        match point {
            Ok(p) => points.push(p),
            Err(_) => {
                return Err(CliError::Validation(format!(
                    "cloud line {}: bad decimal",
                    line_no + 1
                )))
            }
        }
    }
    if points.is_empty() {
        return Err(CliError::Validation("cloud file has no points".into()));
    }
    Ok(points)
}

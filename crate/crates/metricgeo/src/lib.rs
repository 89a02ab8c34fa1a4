//! Batch front-end: config parsing, catalog dispatch, seeded runs, and
//! CSV/JSON reporting for the distance solvers, the embedding pipeline, and
//! the verification labs.
//!
//! Exit-code contract: 0 on pass, 2 on computed-but-failed assertions
//! (e.g. a monotonicity violation), 1 on errors.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

pub use config::{parse_config, CommandName, IndexValue, Overrides, RunConfig};
pub use error::{CliError, Result};
pub use report::RunReport;

/// Outcome of a run: the report, the exit code, and the files written.
#[derive(Debug)]
pub struct RunOutcome {
    pub report: RunReport,
    pub exit_code: u8,
    pub files: Vec<PathBuf>,
}

/// Executes a validated configuration, writing outputs under its directory.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let start = Instant::now();
    let output = match config.command {
        CommandName::Ccdist => {
            commands::run_ccdist(config, config.ccdist.as_ref().expect("validated"))?
        }
        CommandName::Monotone => {
            commands::run_monotone(config, config.monotone.as_ref().expect("validated"))?
        }
        CommandName::Embed => {
            commands::run_embed(config, config.embed.as_ref().expect("validated"))?
        }
        CommandName::VerifyTube => {
            commands::run_verify_tube(config, config.verify_tube.as_ref().expect("validated"))?
        }
        CommandName::Pull => commands::run_pull(config, config.pull.as_ref().expect("validated"))?,
        CommandName::Defect => {
            commands::run_defect(config, config.defect.as_ref().expect("validated"))?
        }
        CommandName::Collapse => {
            commands::run_collapse(config, config.collapse.as_ref().expect("validated"))?
        }
    };

    std::fs::create_dir_all(&config.output).map_err(|e| CliError::Io {
        path: config.output.display().to_string(),
        message: e.to_string(),
    })?;
    let mut written = Vec::new();
    for (name, contents) in &output.files {
        let path = config.output.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        written.push(path);
    }
    let mut report = RunReport::new(config, output.metrics, output.pass);
    report.duration_seconds = start.elapsed().as_secs_f64();
    let report_path = config.output.join("report.json");
    let mut payload = serde_json::to_string_pretty(&report)?;
    payload.push('\n');
    std::fs::write(&report_path, payload).map_err(|e| CliError::Io {
        path: report_path.display().to_string(),
        message: e.to_string(),
    })?;
    written.push(report_path);

    let exit_code = match output.pass {
        Some(false) => 2,
        _ => 0,
    };
    Ok(RunOutcome { report, exit_code, files: written })
}

/// Loads a config file, applies overrides, validates, and runs.
pub fn execute(config_path: &PathBuf, overrides: &Overrides) -> Result<RunOutcome> {
    let text = std::fs::read_to_string(config_path).map_err(|e| CliError::Io {
        path: config_path.display().to_string(),
        message: e.to_string(),
    })?;
    let config = parse_config(&text, overrides)?;
    run(&config)
}

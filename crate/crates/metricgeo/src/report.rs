//! Run reports: the resolved config echo, per-command metrics, pass/fail
//! flags, duration, and seed.

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub config: Value,
    pub metrics: Value,
    /// Pass/fail verdict for commands that assert something; absent for
    /// pure measurements.
    pub pass: Option<bool>,
    pub seed: u64,
    /// Wall-clock duration; the only field allowed to differ between
    /// identical runs.
    pub duration_seconds: f64,
}

impl RunReport {
    pub fn new(config: &RunConfig, metrics: Value, pass: Option<bool>) -> Self {
        RunReport {
            command: config.command.as_str(),
            config: serde_json::to_value(config).expect("config serializes"),
            metrics,
            pass,
            seed: config.seed,
            duration_seconds: 0.0,
        }
    }
}

/// Formats a coordinate point as a space-separated field.
pub fn point_field(point: &[f64]) -> String {
    point
        .iter()
        .map(|x| format!("{x}"))
        .collect::<Vec<_>>()
        .join(" ")
}

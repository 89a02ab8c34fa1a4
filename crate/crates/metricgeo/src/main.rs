use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use metricgeo::{execute, IndexValue, Overrides};

/// Batch runner for metric-geometry experiments.
#[derive(Parser)]
#[command(name = "metricgeo", version, about)]
struct Cli {
    /// Run configuration file (structured key-value text).
    #[arg(long)]
    config: PathBuf,

    /// Seed override for all randomness in the run.
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory override.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Approximation index override: a positive integer or "infinity".
    #[arg(long)]
    m: Option<String>,

    /// Chain step bound override (pull command).
    #[arg(long)]
    epsilon: Option<f64>,

    /// Grid resolution override.
    #[arg(long)]
    resolution: Option<f64>,

    /// Tube loss parameter override (verify-tube command).
    #[arg(long)]
    eta: Option<f64>,

    /// Tube radius override (verify-tube command).
    #[arg(long)]
    delta: Option<f64>,

    /// Planar norm override (defect command).
    #[arg(long)]
    norm: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let m = cli.m.map(|value| match value.parse::<u32>() {
        Ok(finite) => IndexValue::Finite(finite),
        Err(_) => IndexValue::Named(value),
    });
    let overrides = Overrides {
        seed: cli.seed,
        output: cli.output,
        m,
        epsilon: cli.epsilon,
        resolution: cli.resolution,
        eta: cli.eta,
        delta: cli.delta,
        norm: cli.norm,
    };
    match execute(&cli.config, &overrides) {
        Ok(outcome) => {
            let verdict = match outcome.report.pass {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "done",
            };
            println!(
                "{}: {} ({} files, {:.2}s)",
                outcome.report.command,
                verdict,
                outcome.files.len(),
                outcome.report.duration_seconds
            );
            ExitCode::from(outcome.exit_code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

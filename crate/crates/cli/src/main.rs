use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod sink;

#[derive(Parser, Debug, Serialize)]
#[command(name = "dtqw", version, about = "Discrete-time quantum walks: bands, invariants, symmetries, edge states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Command {
    /// Quasienergy bands and Bloch vectors on a k-grid
    Band(RunConfig),
    /// Brillouin-zone image on the Bloch sphere, optionally frame-rotated
    Map {
        #[command(flatten)]
        config: RunConfig,
        /// identity, v1, v2 or all
        #[arg(long, default_value = "identity")]
        frame: String,
    },
    /// Winding numbers of both bands and of the rotated families
    Winding(RunConfig),
    /// Relative-homotopy invariant, or a comparison when --theta1/--theta2 are given
    Invariant(RunConfig),
    /// Symmetry residuals on a ring and at sampled momenta
    Symmetry(RunConfig),
    /// Analytic edge state at a sharp interface and its eigen-residual
    Edge {
        #[command(flatten)]
        config: RunConfig,
        /// 0 or pi
        #[arg(long, default_value = "0")]
        eta: String,
    },
    /// Interface dynamics for one of the three initial-state cases
    Evolve {
        #[command(flatten)]
        config: RunConfig,
        /// orthogonal-to-both, overlap-one or overlap-both
        #[arg(long, default_value = "overlap-both")]
        case: String,
    },
    /// Phase classification over a θ range
    Sweep {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, allow_negative_numbers = true)]
        theta_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        theta_max: Option<f64>,
        /// Number of θ values, endpoints included
        #[arg(long, default_value_t = 33)]
        count: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RunConfig {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Defaults to π/4
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta2: Option<f64>,
    #[arg(long)]
    pub ring_size: Option<usize>,
    #[arg(long, default_value_t = dtqw_core::momentum::DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Read all angles in degrees
    #[arg(long)]
    pub degrees: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

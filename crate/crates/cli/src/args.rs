use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cra_core::phase_map::GridRange;

use crate::config::Task;

#[derive(Debug, Parser)]
#[command(name = "cra", version, about = "Emitter coupled to a semi-infinite coupled-resonator array")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one task and write its outputs.
    Run(RunArgs),
}

/// Frequencies, couplings and times are in units of ξ.
#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub task: Option<Task>,
    /// JSON run configuration; flags take precedence over its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega_c: Option<f64>,
    /// Hop strength; rescales every output.
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta_c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    /// Coupled resonator.
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of resonators.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    /// Wavenumbers k = iπ/(steps + 1), i = 1..=steps.
    #[arg(long)]
    pub k_steps: Option<usize>,
    #[arg(long, value_name = "LO:HI:STEPS", allow_hyphen_values = true)]
    pub g_range: Option<GridRange>,
    #[arg(long, value_name = "LO:HI:STEPS", allow_hyphen_values = true)]
    pub delta_range: Option<GridRange>,
    /// Also diagonalize at every phase-map point.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overwrite existing output files.
    #[arg(long)]
    pub force: bool,
}

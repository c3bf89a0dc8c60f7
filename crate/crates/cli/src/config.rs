//! Run configuration: a JSON file merged with command-line flags.
//!
//! Values in the file carry the units of its `params.xi`; flags are in units
//! of ξ. Everything is reduced to ξ = 1 before merging and scaled by the
//! final ξ afterwards, so `--xi` alone rescales a run without changing its
//! physics.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use cra_core::phase_map::{GridRange, DEFAULT_DELTA_RANGE, DEFAULT_G_RANGE};
use cra_core::SystemParams;
use serde::{Deserialize, Serialize};

use crate::args::RunArgs;
use crate::CliError;

pub const DEFAULT_DT: f64 = 0.05;
pub const DEFAULT_K_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Spectrum,
    Scatter,
    Dynamics,
    PhaseMap,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_range: Option<GridRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_range: Option<GridRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
}

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub params: Option<SystemParams>,
    #[serde(default)]
    pub task: Option<Task>,
    #[serde(default)]
    pub options: TaskOptions,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub force: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// A fully resolved invocation, in the units of `params.xi`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub task: Task,
    /// `None` selects the revival-guarded default.
    pub t_max: Option<f64>,
    pub dt: f64,
    pub k_steps: usize,
    /// Sweep ranges in units of ξ.
    pub g_range: GridRange,
    pub delta_range: GridRange,
    pub oracle: bool,
    /// Oracle truncation, when one was asked for explicitly.
    pub oracle_sites: Option<usize>,
    pub output_dir: PathBuf,
    pub force: bool,
}

impl RunConfig {
    pub fn resolve(args: &RunArgs, file: ConfigFile) -> Result<Self, CliError> {
        let base = file.params.unwrap_or_default();
        let xi0 = base.xi;
        if !(xi0.is_finite() && xi0 > 0.0) {
            return Err(CliError::Core(cra_core::Error::InvalidParams {
                field: "xi",
                reason: format!("must be positive and finite, got {xi0}"),
            }));
        }
        let xi = args.xi.unwrap_or(xi0);
        let reduced = |flag: Option<f64>, value: f64| flag.unwrap_or(value / xi0);
        let params = SystemParams {
            omega_c: xi * reduced(args.omega_c, base.omega_c),
            xi,
            delta_c: xi * reduced(args.delta_c, base.delta_c),
            g: xi * reduced(args.g, base.g),
            d: args.d.unwrap_or(base.d),
            n_sites: args.n.unwrap_or(base.n_sites),
        };

        let opts = file.options;
        let t_max = args.t_max.or(opts.t_max.map(|t| t * xi0)).map(|t| t / xi);
        let dt = args.dt.or(opts.dt.map(|t| t * xi0)).unwrap_or(DEFAULT_DT) / xi;
        let scale = |r: GridRange| GridRange::new(r.lo / xi0, r.hi / xi0, r.steps);
        let task = args
            .task
            .or(file.task)
            .ok_or_else(|| CliError::Usage("no task given (use --task or \"task\" in the config)".into()))?;

        Ok(RunConfig {
            params,
            task,
            t_max,
            dt,
            k_steps: args.k_steps.or(opts.k_steps).unwrap_or(DEFAULT_K_STEPS),
            g_range: args.g_range.or(opts.g_range.map(scale)).unwrap_or(DEFAULT_G_RANGE),
            delta_range: args.delta_range.or(opts.delta_range.map(scale)).unwrap_or(DEFAULT_DELTA_RANGE),
            oracle: args.oracle || opts.oracle.unwrap_or(false),
            oracle_sites: args.n.or(file.params.map(|p| p.n_sites)),
            output_dir: args.out.clone().or(file.output_dir).unwrap_or_else(|| PathBuf::from(".")),
            force: args.force || file.force.unwrap_or(false),
        })
    }
}

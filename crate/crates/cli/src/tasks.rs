use std::f64::consts::PI;

use cra_core::analytic::{
    bic_find, boc_solve, scattering, thresholds, BoundStateInContinuum, BoundStateOutside, Thresholds,
};
use cra_core::dynamics::{classify_long_time, default_t_max, evolve_eigenbasis};
use cra_core::export::{
    to_json_string, write_boundary_csv, write_phase_map_csv, write_scatter_csv, write_trajectory_csv,
};
use cra_core::numeric::{build_hamiltonian, count_out_of_band, default_margin, diagonalize, locate_bic_numeric};
use cra_core::phase_map::{boundary_curves, sweep_with, ORACLE_SITES};
use cra_core::{Error, SystemParams};
use serde::Serialize;

use crate::config::{RunConfig, Task};
use crate::CliError;

/// A named file and its full contents.
pub type Output = (&'static str, Vec<u8>);

#[derive(Serialize)]
struct Spectrum<'a> {
    params: &'a SystemParams,
    band_edges: (f64, f64),
    eigenvalues: &'a [f64],
    emitter_weights: &'a [f64],
    n_out_of_band: usize,
    out_of_band_energies: Vec<f64>,
    numeric_bic_energy: Option<f64>,
    thresholds: Thresholds,
    bound_states_outside: Vec<BoundStateOutside>,
    bound_state_in_continuum: Option<BoundStateInContinuum>,
}

pub fn run(cfg: &RunConfig) -> Result<Vec<Output>, CliError> {
    let p = cfg.params.validate()?;
    match cfg.task {
        Task::Spectrum => spectrum(&p),
        Task::Scatter => scatter(&p, cfg.k_steps),
        Task::Dynamics => dynamics(&p, cfg),
        Task::PhaseMap => phase_map(&p, cfg),
    }
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    to_json_string(value)
        .map(String::into_bytes)
        .map_err(|e| CliError::Core(Error::Numerical(e.to_string())))
}

fn spectrum(p: &SystemParams) -> Result<Vec<Output>, CliError> {
    let sol = diagonalize(&build_hamiltonian(p)?)?;
    let margin = default_margin(p);
    let (lo, hi) = p.band_edges();
    let report = Spectrum {
        params: p,
        band_edges: (lo, hi),
        eigenvalues: &sol.energies,
        emitter_weights: &sol.emitter_weights,
        n_out_of_band: count_out_of_band(&sol, p, margin),
        out_of_band_energies: sol
            .energies
            .iter()
            .copied()
            .filter(|&e| e < lo - margin || e > hi + margin)
            .collect(),
        numeric_bic_energy: locate_bic_numeric(&sol, p).map(|m| sol.energies[m]),
        thresholds: thresholds(p)?,
        bound_states_outside: boc_solve(p)?,
        bound_state_in_continuum: bic_find(p)?,
    };
    Ok(vec![("spectrum.json", json(&report)?)])
}

fn scatter(p: &SystemParams, steps: usize) -> Result<Vec<Output>, CliError> {
    if steps == 0 {
        return Err(Error::Domain("k-steps must be at least 1".into()).into());
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 1..=steps {
        let k = i as f64 * PI / (steps + 1) as f64;
        match scattering(p, k) {
            Ok(s) => rows.push(s),
            // the reflection phase is undefined at an embedded bound state
            Err(Error::SingularPoint { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let mut csv = Vec::new();
    write_scatter_csv(&rows, &mut csv)?;
    Ok(vec![("scatter.csv", csv)])
}

fn dynamics(p: &SystemParams, cfg: &RunConfig) -> Result<Vec<Output>, CliError> {
    let t_max = cfg.t_max.unwrap_or_else(|| default_t_max(p));
    let traj = evolve_eigenbasis(p, t_max, cfg.dt)?;
    let report = classify_long_time(p, &traj, None)?;
    let mut csv = Vec::new();
    write_trajectory_csv(&traj, &mut csv)?;
    Ok(vec![("trajectory.csv", csv), ("longtime.json", json(&report)?)])
}

fn phase_map(p: &SystemParams, cfg: &RunConfig) -> Result<Vec<Output>, CliError> {
    let sites = cfg.oracle.then(|| cfg.oracle_sites.unwrap_or(ORACLE_SITES));
    let mut points = sweep_with(p.d, cfg.g_range, cfg.delta_range, sites)?;
    let (mut upper, mut lower) = boundary_curves(p.d, cfg.delta_range)?;
    for pt in &mut points {
        pt.g *= p.xi;
        pt.delta_c *= p.xi;
    }
    for (dc, g) in upper.iter_mut().chain(lower.iter_mut()) {
        *dc *= p.xi;
        *g *= p.xi;
    }
    let (mut map, mut bu, mut bl) = (Vec::new(), Vec::new(), Vec::new());
    write_phase_map_csv(&points, &mut map)?;
    write_boundary_csv(&upper, &mut bu)?;
    write_boundary_csv(&lower, &mut bl)?;
    Ok(vec![("phasemap.csv", map), ("boundary_u.csv", bu), ("boundary_l.csv", bl)])
}

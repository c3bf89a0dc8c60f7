//! Spontaneous emission of the initially excited emitter, `|ψ(0)⟩ = |e0⟩`.
//!
//! Two independent propagators act on the same truncated Hamiltonian: the
//! eigenbasis sum `u(t) = Σ_m |⟨e0|E_m⟩|² e^{−iE_m t}` and an explicit RK4
//! integration of the site-basis amplitude equations. The long-time
//! behaviour is set by the bound states: their emitter weights fix the
//! asymptotic mean of `P_e` and their pairwise energy gaps its residual
//! oscillation frequencies.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::analytic::{bic_find, boc_solve, Branch};
use crate::error::{Error, Result};
use crate::numeric::{build_hamiltonian, diagonalize, EigenSolution};
use crate::params::SystemParams;

/// Largest RK4 step, in units of `1/ξ`.
pub const MAX_TIMESTEP: f64 = 0.05;
/// Spectral peaks whose DFT magnitude is below this fraction of the
/// strongest peak are ignored.
pub const PEAK_MAGNITUDE_FRACTION: f64 = 0.05;
/// Spectral peaks whose fitted oscillation amplitude (in units of `P_e`)
/// falls below this are treated as continuum leakage.
pub const MIN_PEAK_AMPLITUDE: f64 = 1e-3;
/// Minimum number of periods of the slowest predicted beat in the window.
pub const MIN_WINDOW_PERIODS: f64 = 8.0;
const MIN_WINDOW_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Eigenbasis,
    Timestep,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvolveOptions {
    /// Permit `t_max` past the far-wall revival time.
    pub allow_revival: bool,
    /// Record the total single-excitation norm at every sample. Always on
    /// for the timestep method.
    pub track_norm: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeTrajectory {
    pub times: Vec<f64>,
    pub u: Vec<Complex64>,
    pub p_e: Vec<f64>,
    pub method: Method,
    /// Emitter plus photon norm per sample, when tracked.
    pub norm: Option<Vec<f64>>,
}

impl AmplitudeTrajectory {
    fn new(times: Vec<f64>, u: Vec<Complex64>, method: Method, norm: Option<Vec<f64>>) -> Self {
        let p_e = u.iter().map(|z| z.norm_sqr()).collect();
        AmplitudeTrajectory {
            times,
            u,
            p_e,
            method,
            norm,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_max(&self) -> f64 {
        self.times.last().copied().unwrap_or(0.0)
    }

    /// Largest `|u_self(t) − u_other(t)|` over shared samples.
    pub fn max_deviation(&self, other: &AmplitudeTrajectory) -> f64 {
        self.u
            .iter()
            .zip(&other.u)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|norm(t) − 1|`, if the norm was tracked.
    pub fn max_norm_drift(&self) -> Option<f64> {
        self.norm
            .as_ref()
            .map(|n| n.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max))
    }
}

/// `0.8 (N − d)/ξ`: comfortably before the far-wall echo returns.
pub fn default_t_max(params: &SystemParams) -> f64 {
    0.8 * params.revival_time()
}

/// Uniform samples `0, dt, 2dt, …` up to `t_max`.
pub fn time_grid(t_max: f64, dt: f64) -> Vec<f64> {
    let steps = (t_max / dt + 1e-9).floor() as usize;
    (0..=steps).map(|i| i as f64 * dt).collect()
}

fn check_window(p: &SystemParams, t_max: f64, dt: f64, opts: EvolveOptions) -> Result<()> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::Domain(format!("t_max = {t_max} must be positive")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Domain(format!("dt = {dt} must be positive")));
    }
    let limit = p.revival_time();
    if !opts.allow_revival && t_max >= limit {
        return Err(Error::RevivalWindowExceeded { t_max, limit });
    }
    Ok(())
}

pub fn evolve_eigenbasis(params: &SystemParams, t_max: f64, dt: f64) -> Result<AmplitudeTrajectory> {
    evolve_eigenbasis_with(params, t_max, dt, EvolveOptions::default())
}

pub fn evolve_eigenbasis_with(
    params: &SystemParams,
    t_max: f64,
    dt: f64,
    opts: EvolveOptions,
) -> Result<AmplitudeTrajectory> {
    let p = params.validate()?;
    check_window(&p, t_max, dt, opts)?;
    let sol = diagonalize(&build_hamiltonian(&p)?)?;
    Ok(evolve_from_solution(&sol, &time_grid(t_max, dt), opts.track_norm))
}

/// Eigenbasis propagation on an existing diagonalization.
pub fn evolve_from_solution(sol: &EigenSolution, times: &[f64], track_norm: bool) -> AmplitudeTrajectory {
    let u: Vec<Complex64> = times
        .par_iter()
        .map(|&t| {
            sol.energies
                .iter()
                .zip(&sol.emitter_weights)
                .map(|(&e, &w)| w * Complex64::from_polar(1.0, -e * t))
                .sum()
        })
        .collect();

    let norm = track_norm.then(|| {
        let overlap: Vec<f64> = (0..sol.len()).map(|m| sol.emitter_amplitude(m)).collect();
        times
            .par_iter()
            .map(|&t| {
                let coeff: Vec<Complex64> = sol
                    .energies
                    .iter()
                    .zip(&overlap)
                    .map(|(&e, &a)| a * Complex64::from_polar(1.0, -e * t))
                    .collect();
                sol.states
                    .row_iter()
                    .map(|row| {
                        row.iter()
                            .zip(&coeff)
                            .map(|(&v, c)| v * c)
                            .sum::<Complex64>()
                            .norm_sqr()
                    })
                    .sum()
            })
            .collect()
    });

    AmplitudeTrajectory::new(times.to_vec(), u, Method::Eigenbasis, norm)
}

pub fn evolve_timestep(params: &SystemParams, t_max: f64, dt: f64) -> Result<AmplitudeTrajectory> {
    evolve_timestep_with(params, t_max, dt, EvolveOptions::default())
}

/// Classic RK4 on the site-basis amplitude equations.
///
/// The uniform on-site frequency ω_c is removed as a global phase before
/// integrating and restored on output.
pub fn evolve_timestep_with(
    params: &SystemParams,
    t_max: f64,
    dt: f64,
    opts: EvolveOptions,
) -> Result<AmplitudeTrajectory> {
    let p = params.validate()?;
    check_window(&p, t_max, dt, opts)?;
    let max = MAX_TIMESTEP / p.xi;
    if dt > max {
        return Err(Error::StepTooLarge { dt, max });
    }

    let n = p.n_sites;
    let derivative = |y: &[Complex64], out: &mut [Complex64]| {
        let minus_i = Complex64::new(0.0, -1.0);
        for j in 0..n {
            let mut h = Complex64::new(0.0, 0.0);
            if j > 0 {
                h -= p.xi * y[j - 1];
            }
            if j + 1 < n {
                h -= p.xi * y[j + 1];
            }
            out[j] = minus_i * h;
        }
        out[p.d - 1] += minus_i * p.g * y[n];
        out[n] = minus_i * (p.delta_c * y[n] + p.g * y[p.d - 1]);
    };

    let times = time_grid(t_max, dt);
    let mut y = vec![Complex64::new(0.0, 0.0); n + 1];
    y[n] = Complex64::new(1.0, 0.0);
    let (mut k1, mut k2, mut k3, mut k4) = (y.clone(), y.clone(), y.clone(), y.clone());
    let mut stage = y.clone();

    let mut u = Vec::with_capacity(times.len());
    let mut norm = Vec::with_capacity(times.len());
    for (step, &t) in times.iter().enumerate() {
        if step > 0 {
            derivative(&y, &mut k1);
            for i in 0..=n {
                stage[i] = y[i] + 0.5 * dt * k1[i];
            }
            derivative(&stage, &mut k2);
            for i in 0..=n {
                stage[i] = y[i] + 0.5 * dt * k2[i];
            }
            derivative(&stage, &mut k3);
            for i in 0..=n {
                stage[i] = y[i] + dt * k3[i];
            }
            derivative(&stage, &mut k4);
            for i in 0..=n {
                y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        u.push(y[n] * Complex64::from_polar(1.0, -p.omega_c * t));
        norm.push(y.iter().map(Complex64::norm_sqr).sum());
    }
    Ok(AmplitudeTrajectory::new(times, u, Method::Timestep, Some(norm)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
    Bic,
}

/// A bound state's energy and its emitter weight `|C_b|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundLevel {
    pub kind: BoundKind,
    pub energy: f64,
    pub weight: f64,
}

/// Every bound state of the semi-infinite problem, ascending in energy.
pub fn bound_census(params: &SystemParams) -> Result<Vec<BoundLevel>> {
    let mut levels: Vec<BoundLevel> = boc_solve(params)?
        .into_iter()
        .map(|s| BoundLevel {
            kind: match s.branch {
                Branch::Upper => BoundKind::Upper,
                Branch::Lower => BoundKind::Lower,
            },
            energy: s.energy,
            weight: s.c_emitter * s.c_emitter,
        })
        .collect();
    if let Some(b) = bic_find(params)? {
        levels.push(BoundLevel {
            kind: BoundKind::Bic,
            energy: b.energy,
            weight: b.c_emitter * b.c_emitter,
        });
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(levels)
}

/// `|Σ_b |C_b|² e^{−iE_b t}|²`, the population carried by the bound states.
pub fn analytic_longtime_pe(census: &[BoundLevel], t: f64) -> f64 {
    census
        .iter()
        .map(|b| b.weight * Complex64::from_polar(1.0, -b.energy * t))
        .sum::<Complex64>()
        .norm_sqr()
}

/// Distinct pairwise gaps `|E_b − E_b'|`, ascending.
pub fn predicted_frequencies(census: &[BoundLevel]) -> Vec<f64> {
    let mut gaps: Vec<f64> = census
        .iter()
        .enumerate()
        .flat_map(|(i, a)| census[i + 1..].iter().map(move |b| (a.energy - b.energy).abs()))
        .collect();
    gaps.sort_by(f64::total_cmp);
    gaps.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * b.abs().max(1.0));
    gaps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LongTimeCategory {
    CompleteDecay,
    Plateau,
    ResidualOscillation,
    QuantumBeat,
}

impl LongTimeCategory {
    pub fn from_census_size(n: usize) -> Self {
        match n {
            0 => LongTimeCategory::CompleteDecay,
            1 => LongTimeCategory::Plateau,
            2 => LongTimeCategory::ResidualOscillation,
            _ => LongTimeCategory::QuantumBeat,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LongTimeReport {
    pub category: LongTimeCategory,
    pub mean_population: f64,
    /// `Σ_b |C_b|⁴`.
    pub predicted_mean: f64,
    pub frequencies: Vec<f64>,
    pub predicted_frequencies: Vec<f64>,
    pub window: (f64, f64),
    /// `2π / (t_hi − t_lo)`.
    pub resolution: f64,
    /// Fewer than [`MIN_WINDOW_PERIODS`] of the slowest predicted beat fit in
    /// the window, so `frequencies` was left empty.
    pub frequency_check_skipped: bool,
    pub census: Vec<BoundLevel>,
}

impl LongTimeReport {
    /// Predicted frequencies with no detected peak within one resolution cell.
    pub fn unmatched_predictions(&self) -> Vec<f64> {
        self.predicted_frequencies
            .iter()
            .copied()
            .filter(|f| !self.frequencies.iter().any(|x| (x - f).abs() <= self.resolution))
            .collect()
    }
}

/// Long-time analysis of `traj` over `window` (default `[0.6, 1.0]·t_max`).
pub fn classify_long_time(
    params: &SystemParams,
    traj: &AmplitudeTrajectory,
    window: Option<(f64, f64)>,
) -> Result<LongTimeReport> {
    let t_end = traj.t_max();
    let (t_lo, t_hi) = window.unwrap_or((0.6 * t_end, t_end));
    if t_lo.is_nan() || t_hi.is_nan() || t_lo >= t_hi || t_lo < 0.0 || t_hi > t_end * (1.0 + 1e-12) {
        return Err(Error::WindowTooShort(format!(
            "window [{t_lo}, {t_hi}] is not inside [0, {t_end}]"
        )));
    }
    let samples: Vec<f64> = traj
        .times
        .iter()
        .zip(&traj.p_e)
        .filter(|(&t, _)| t >= t_lo && t <= t_hi)
        .map(|(_, &p)| p)
        .collect();
    if samples.len() < MIN_WINDOW_SAMPLES {
        return Err(Error::WindowTooShort(format!(
            "{} samples in [{t_lo}, {t_hi}]",
            samples.len()
        )));
    }
    let dt = traj.times[1] - traj.times[0];
    let mean_population = samples.iter().sum::<f64>() / samples.len() as f64;

    let census = bound_census(params)?;
    let predicted = predicted_frequencies(&census);
    let span = t_hi - t_lo;
    let resolution = 2.0 * PI / span;
    let skipped = predicted
        .first()
        .is_some_and(|&f| span < MIN_WINDOW_PERIODS * 2.0 * PI / f);
    let frequencies = if skipped {
        Vec::new()
    } else {
        spectral_peaks(&samples, dt, mean_population)
            .into_iter()
            .filter(|p| p.frequency >= resolution)
            .map(|p| p.frequency)
            .collect()
    };

    Ok(LongTimeReport {
        category: LongTimeCategory::from_census_size(census.len()),
        mean_population,
        predicted_mean: census.iter().fold(0.0, |acc, b| acc + b.weight * b.weight),
        frequencies,
        predicted_frequencies: predicted,
        window: (t_lo, t_hi),
        resolution,
        frequency_check_skipped: skipped,
        census,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPeak {
    /// Angular frequency.
    pub frequency: f64,
    /// Fitted cosine amplitude.
    pub amplitude: f64,
    pub power: f64,
}

/// Hann-windowed spectral peaks of `samples − mean` at uniform spacing `dt`,
/// ascending in frequency.
pub fn spectral_peaks(samples: &[f64], dt: f64, mean: f64) -> Vec<SpectralPeak> {
    let m = samples.len();
    if m < 3 {
        return Vec::new();
    }
    let hann: Vec<f64> = (0..m)
        .map(|i| 0.5 * (1.0 - (2.0 * PI * i as f64 / (m - 1) as f64).cos()))
        .collect();
    let window_sum: f64 = hann.iter().sum();
    // 4x zero padding for the interpolation grid
    let n_fft = (4 * m).next_power_of_two();
    let mut buf: Vec<Complex64> = samples
        .iter()
        .zip(&hann)
        .map(|(&x, &w)| Complex64::new((x - mean) * w, 0.0))
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(n_fft)
        .collect();
    FftPlanner::new().plan_fft_forward(n_fft).process(&mut buf);

    let half = n_fft / 2;
    let mag: Vec<f64> = buf[..=half].iter().map(|z| z.norm()).collect();
    let max_mag = mag[1..].iter().copied().fold(0.0, f64::max);
    let bin_width = 2.0 * PI / (n_fft as f64 * dt);

    (1..half)
        .filter(|&k| mag[k] > mag[k - 1] && mag[k] >= mag[k + 1])
        .filter_map(|k| {
            let power = mag[k] * mag[k];
            let (a, b, c) = (mag[k - 1], mag[k], mag[k + 1]);
            let denom = a - 2.0 * b + c;
            let offset = if denom != 0.0 { 0.5 * (a - c) / denom } else { 0.0 };
            let peak_mag = b - 0.25 * (a - c) * offset;
            let amplitude = 2.0 * peak_mag / window_sum;
            (b >= PEAK_MAGNITUDE_FRACTION * max_mag && amplitude >= MIN_PEAK_AMPLITUDE).then_some(
                SpectralPeak {
                    frequency: (k as f64 + offset) * bin_width,
                    amplitude,
                    power,
                },
            )
        })
        .collect()
}

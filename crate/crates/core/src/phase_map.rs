//! Bound-state census over a `(g, Δ_c)` grid at fixed coupled site `d`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{bic_find, thresholds, Branch};
use crate::error::{Error, Result};
use crate::numeric::{build_hamiltonian, count_out_of_band_values, default_margin};
use crate::params::SystemParams;

/// Truncation used when a sweep is checked against diagonalization.
pub const ORACLE_SITES: usize = 400;

/// `steps` evenly spaced values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Self {
        GridRange { lo, hi, steps }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 || !(self.lo.is_finite() && self.hi.is_finite()) || self.hi < self.lo {
            return Err(Error::Domain(format!(
                "grid {}:{}:{} needs lo <= hi and steps >= 2",
                self.lo, self.hi, self.steps
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.lo + i as f64 * step).collect()
    }
}

impl std::str::FromStr for GridRange {
    type Err = Error;

    /// Parses `lo:hi:steps`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("expected lo:hi:steps, got `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, steps] = parts.as_slice() else {
            return Err(bad());
        };
        let range = GridRange {
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
            steps: steps.trim().parse().map_err(|_| bad())?,
        };
        range.validate()?;
        Ok(range)
    }
}

/// Default coupling axis `[0, 2ξ]`.
pub const DEFAULT_G_RANGE: GridRange = GridRange { lo: 0.0, hi: 2.0, steps: 81 };
/// Default detuning axis `[−3ξ, 3ξ]`.
pub const DEFAULT_DELTA_RANGE: GridRange = GridRange { lo: -3.0, hi: 3.0, steps: 121 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub g: f64,
    pub delta_c: f64,
    pub n_boc: usize,
    pub has_bic: bool,
    pub n_total: usize,
    /// Out-of-band eigenvalue count of the truncated Hamiltonian.
    pub n_oob_numeric: Option<usize>,
}

impl PhasePoint {
    pub fn oracle_agrees(&self) -> Option<bool> {
        self.n_oob_numeric.map(|n| n == self.n_boc)
    }
}

/// Analytic census at a single point.
pub fn census_point(params: &SystemParams) -> Result<PhasePoint> {
    let th = thresholds(params)?;
    let n_boc = [Branch::Upper, Branch::Lower]
        .into_iter()
        .filter(|&b| th.exists(b, params.g))
        .count();
    let has_bic = bic_find(params)?.is_some();
    Ok(PhasePoint {
        g: params.g,
        delta_c: params.delta_c,
        n_boc,
        has_bic,
        n_total: n_boc + has_bic as usize,
        n_oob_numeric: None,
    })
}

/// Census over the grid, ordered with `g` as the outer index. Ranges are in
/// units of ξ = 1.
pub fn sweep(d: usize, g_range: GridRange, delta_range: GridRange, oracle: bool) -> Result<Vec<PhasePoint>> {
    sweep_with(d, g_range, delta_range, oracle.then_some(ORACLE_SITES))
}

/// As [`sweep`], diagonalizing at `oracle_sites` when given.
pub fn sweep_with(
    d: usize,
    g_range: GridRange,
    delta_range: GridRange,
    oracle_sites: Option<usize>,
) -> Result<Vec<PhasePoint>> {
    g_range.validate()?;
    delta_range.validate()?;
    let n_sites = oracle_sites.unwrap_or(ORACLE_SITES);
    SystemParams::new(0.0, 0.0, d, n_sites).validate()?;

    let grid: Vec<(f64, f64)> = g_range
        .values()
        .into_iter()
        .flat_map(|g| delta_range.values().into_iter().map(move |dc| (g, dc)))
        .collect();

    grid.par_iter()
        .map(|&(g, delta_c)| {
            let params = SystemParams::new(delta_c, g, d, n_sites);
            let mut point = census_point(&params)?;
            if oracle_sites.is_some() {
                let values = build_hamiltonian(&params)?.eigenvalues();
                point.n_oob_numeric = Some(count_out_of_band_values(&values, &params, default_margin(&params)));
            }
            Ok(point)
        })
        .collect()
}

/// `(Δ_c, g_crit)` pairs along a detuning axis.
pub type Curve = Vec<(f64, f64)>;

/// Critical-coupling curves `(Δ_c, g_u)` and `(Δ_c, g_l)`.
pub fn boundary_curves(d: usize, delta_range: GridRange) -> Result<(Curve, Curve)> {
    delta_range.validate()?;
    let mut upper = Vec::with_capacity(delta_range.steps);
    let mut lower = Vec::with_capacity(delta_range.steps);
    for delta_c in delta_range.values() {
        let th = thresholds(&SystemParams::new(delta_c, 0.0, d, d + 2))?;
        upper.push((delta_c, th.g_u));
        lower.push((delta_c, th.g_l));
    }
    Ok((upper, lower))
}

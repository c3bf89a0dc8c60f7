//! Bound states outside the band.
//!
//! Writing the energy as `E = ω_c ± 2ξ cosh κ` the photon amplitude is
//! `(±1)^j A sinh(κj)` for `j <= d` and `(±1)^j A sinh(κd) e^{-κ(j-d)}` beyond,
//! with the alternating sign on the upper branch. The self-consistency
//! condition at the emitter reads
//!
//! ```text
//! upper:  (Ω − E) sinh κ + (g²/2ξ)(1 − e^{−2κd}) = 0
//! lower:  (Ω − E) sinh κ − (g²/2ξ)(1 − e^{−2κd}) = 0
//! ```
//!
//! which is the band-edge integrated eigenvalue equation with
//! `√(((E−ω_c)/2ξ)² − 1) = sinh κ`.

use num_complex::Complex64;
use serde::Serialize;

use super::thresholds::thresholds_unchecked;
use super::{Branch, SiteProfile};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::root::bisect;

/// Lower end of the κ bracket.
pub const KAPPA_MIN: f64 = 1e-9;
/// Roots below this are flagged as unresolvable by finite truncations.
pub const SHALLOW_KAPPA: f64 = 1e-6;
/// Largest upper bracket end tried before giving up.
pub const KAPPA_MAX_LIMIT: f64 = 50.0;
const KAPPA_MAX_START: f64 = 10.0;
const KAPPA_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundStateOutside {
    pub branch: Branch,
    pub kappa: f64,
    pub energy: f64,
    /// Emitter amplitude `C`.
    pub c_emitter: f64,
    /// Photon prefactor `A` after renormalization.
    pub a_norm: f64,
    /// `κ` fell below [`SHALLOW_KAPPA`].
    pub shallow: bool,
    /// `A` from the closed-form normalization; `None` when its radicand is
    /// not positive.
    pub closed_form_a_norm: Option<f64>,
    d: usize,
}

impl BoundStateOutside {
    /// Real photon amplitude at site `j`.
    pub fn photon_amplitude(&self, j: usize) -> f64 {
        let sign = match self.branch {
            Branch::Upper if j % 2 == 1 => -1.0,
            _ => 1.0,
        };
        let shape = if j <= self.d {
            (self.kappa * j as f64).sinh()
        } else {
            (self.kappa * self.d as f64).sinh() * (-self.kappa * (j - self.d) as f64).exp()
        };
        sign * self.a_norm * shape
    }

    /// Relative disagreement between the closed-form and numerically
    /// renormalized photon prefactor.
    pub fn normalization_mismatch(&self) -> Option<f64> {
        self.closed_form_a_norm
            .map(|a| (a - self.a_norm).abs() / self.a_norm)
    }
}

impl SiteProfile for BoundStateOutside {
    fn coupled_site(&self) -> usize {
        self.d
    }

    fn site_amplitude(&self, j: usize) -> Complex64 {
        if j == 0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(self.photon_amplitude(j), 0.0)
    }

    fn emitter_amplitude(&self) -> Complex64 {
        Complex64::new(self.c_emitter, 0.0)
    }
}

fn energy_at(p: &SystemParams, branch: Branch, kappa: f64) -> f64 {
    match branch {
        Branch::Upper => p.omega_c + 2.0 * p.xi * kappa.cosh(),
        Branch::Lower => p.omega_c - 2.0 * p.xi * kappa.cosh(),
    }
}

fn residual_kappa(p: &SystemParams, branch: Branch, kappa: f64) -> f64 {
    let energy = energy_at(p, branch, kappa);
    let lhs = (p.omega() - energy) * kappa.sinh();
    let coupling = p.g * p.g / (2.0 * p.xi) * -(-2.0 * kappa * p.d as f64).exp_m1();
    match branch {
        Branch::Upper => lhs + coupling,
        Branch::Lower => lhs - coupling,
    }
}

/// Signed residual (LHS − RHS) of the integrated bound-state equation on
/// `branch`, evaluated at an energy outside the band on that branch's side.
pub fn boc_residual(params: &SystemParams, branch: Branch, energy: f64) -> Result<f64> {
    let p = params.validate()?;
    let x = (energy - p.omega_c) / (2.0 * p.xi);
    let on_side = match branch {
        Branch::Upper => x > 1.0,
        Branch::Lower => x < -1.0,
    };
    if !on_side {
        return Err(Error::Domain(format!(
            "energy {energy} is not outside the band on the {branch:?} side"
        )));
    }
    Ok(residual_kappa(&p, branch, x.abs().acosh()))
}

/// All bound states outside the band, in ascending energy.
pub fn boc_solve(params: &SystemParams) -> Result<Vec<BoundStateOutside>> {
    let p = params.validate()?;
    if p.g == 0.0 {
        return Ok(Vec::new());
    }
    let th = thresholds_unchecked(p.xi, p.delta_c, p.d);
    let mut states = Vec::with_capacity(2);
    for branch in [Branch::Lower, Branch::Upper] {
        if th.exists(branch, p.g) {
            let kappa = solve_kappa(&p, branch)?;
            states.push(build_state(&p, branch, kappa));
        }
    }
    Ok(states)
}

fn solve_kappa(p: &SystemParams, branch: Branch) -> Result<f64> {
    let f = |kappa| residual_kappa(p, branch, kappa);
    let f_lo = f(KAPPA_MIN);
    let expected_lo = match branch {
        Branch::Upper => 1.0,
        Branch::Lower => -1.0,
    };
    // grazing root below the bracket
    if f_lo.signum() != expected_lo {
        return Ok(KAPPA_MIN);
    }
    let mut kappa_max = KAPPA_MAX_START;
    loop {
        if f(kappa_max).signum() == -f_lo.signum() {
            break;
        }
        if kappa_max >= KAPPA_MAX_LIMIT {
            return Err(Error::Convergence(format!(
                "no sign change of the {branch:?} residual on [{KAPPA_MIN}, {KAPPA_MAX_LIMIT}]"
            )));
        }
        kappa_max = (2.0 * kappa_max).min(KAPPA_MAX_LIMIT);
    }
    bisect(f, KAPPA_MIN, kappa_max, KAPPA_TOL)
        .ok_or_else(|| Error::Convergence(format!("{branch:?} bisection lost its bracket")))
}

fn build_state(p: &SystemParams, branch: Branch, kappa: f64) -> BoundStateOutside {
    let d = p.d as f64;
    let energy = energy_at(p, branch, kappa);
    let detuning = energy - p.omega();
    let sinh_kd = (kappa * d).sinh();
    let site_sign = match branch {
        Branch::Upper if p.d % 2 == 1 => -1.0,
        _ => 1.0,
    };

    // amplitudes for A = 1
    let c_raw = site_sign * p.g * sinh_kd / detuning;
    let inner: f64 = (1..=p.d).map(|j| (kappa * j as f64).sinh().powi(2)).sum();
    let tail = sinh_kd * sinh_kd / (2.0 * kappa).exp_m1();
    let norm_sq = inner + tail + c_raw * c_raw;
    let a_norm = norm_sq.sqrt().recip();

    let radicand = kappa.cosh() * (2.0 * kappa * d).exp_m1() / (4.0 * kappa.sinh())
        + p.g * p.g * sinh_kd * sinh_kd / (detuning * detuning)
        - d / 2.0;
    let closed_form_a_norm = (radicand > 0.0).then(|| radicand.sqrt().recip());

    BoundStateOutside {
        branch,
        kappa,
        energy,
        c_emitter: c_raw * a_norm,
        a_norm,
        shallow: kappa < SHALLOW_KAPPA,
        closed_form_a_norm,
        d: p.d,
    }
}

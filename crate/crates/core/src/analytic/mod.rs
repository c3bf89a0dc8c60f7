//! Closed-form and root-finding solutions of the semi-infinite (N → ∞)
//! problem: scattering states, bound states outside the band, existence
//! thresholds, and the bound state in the continuum.

mod bic;
mod boc;
mod scattering;
mod thresholds;

pub use bic::{bic_amplitudes, bic_find, BoundStateInContinuum, BIC_MATCH_TOL};
pub use boc::{
    boc_residual, boc_solve, BoundStateOutside, KAPPA_MAX_LIMIT, KAPPA_MIN, SHALLOW_KAPPA,
};
pub use scattering::{scattering, ScatteringAmplitudes};
pub use thresholds::{thresholds, Thresholds};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Which side of the band a bound state sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Upper,
    Lower,
}

/// A single-excitation state with a closed-form photon amplitude on every
/// site `j >= 1` of the semi-infinite array.
pub trait SiteProfile {
    /// Site the emitter couples to.
    fn coupled_site(&self) -> usize;

    /// Photon amplitude at site `j` (zero at the wall, `j = 0`).
    fn site_amplitude(&self, j: usize) -> Complex64;

    /// Emitter amplitude.
    fn emitter_amplitude(&self) -> Complex64;
}

/// Site amplitudes for `j = 1..=j_max`.
pub fn wavefunction_profile<S>(state: &S, j_max: usize) -> Result<Vec<Complex64>>
where
    S: SiteProfile + ?Sized,
{
    if j_max < state.coupled_site() {
        return Err(Error::Domain(format!(
            "j_max = {j_max} is left of the coupled site {}",
            state.coupled_site()
        )));
    }
    Ok((1..=j_max).map(|j| state.site_amplitude(j)).collect())
}

//! Physical configuration of the emitter + semi-infinite array and the lattice
//! dispersion shared by every solver.
//!
//! Sites are numbered `1..=n_sites`; the hard wall is the fictitious site 0
//! where every photon amplitude vanishes. All frequencies carry the same unit
//! as `xi`, and times are measured in units of `1/xi` (ħ = 1).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Full parameter set of the single-excitation problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
    /// Bare resonator frequency.
    pub omega_c: f64,
    /// Nearest-neighbour hop strength; the global unit.
    pub xi: f64,
    /// Emitter detuning `Ω − ω_c`.
    pub delta_c: f64,
    /// Emitter–resonator coupling.
    pub g: f64,
    /// Index of the resonator the emitter couples to.
    pub d: usize,
    /// Truncation length of the array.
    pub n_sites: usize,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            omega_c: 0.0,
            xi: 1.0,
            delta_c: 0.0,
            g: 0.5,
            d: 3,
            n_sites: 102,
        }
    }
}

impl SystemParams {
    /// Parameters in units of `ξ = 1` with `ω_c = 0`.
    pub fn new(delta_c: f64, g: f64, d: usize, n_sites: usize) -> Self {
        SystemParams {
            delta_c,
            g,
            d,
            n_sites,
            ..Default::default()
        }
    }

    pub fn with_omega_c(mut self, omega_c: f64) -> Self {
        self.omega_c = omega_c;
        self
    }

    pub fn with_xi(mut self, xi: f64) -> Self {
        self.xi = xi;
        self
    }

    pub fn with_g(mut self, g: f64) -> Self {
        self.g = g;
        self
    }

    pub fn with_n_sites(mut self, n_sites: usize) -> Self {
        self.n_sites = n_sites;
        self
    }

    /// Emitter transition frequency `Ω = ω_c + Δ_c`.
    pub fn omega(&self) -> f64 {
        self.omega_c + self.delta_c
    }

    /// Closed band `[ω_c − 2ξ, ω_c + 2ξ]`.
    pub fn band_edges(&self) -> (f64, f64) {
        (self.omega_c - 2.0 * self.xi, self.omega_c + 2.0 * self.xi)
    }

    /// Time at which radiation reflected by the far wall of the truncated
    /// array returns to the emitter: `2(N − d)/v_max` with `v_max = 2ξ`.
    pub fn revival_time(&self) -> f64 {
        (self.n_sites - self.d) as f64 / self.xi
    }

    /// Checks every invariant and returns the parameters unchanged.
    pub fn validate(self) -> Result<Self> {
        let fail = |field, reason: &str| {
            Err(Error::InvalidParams {
                field,
                reason: reason.to_string(),
            })
        };
        if !(self.xi.is_finite() && self.xi > 0.0) {
            return fail("xi", "must be finite and > 0");
        }
        if !self.omega_c.is_finite() {
            return fail("omega_c", "must be finite");
        }
        if !self.delta_c.is_finite() {
            return fail("delta_c", "must be finite");
        }
        if !(self.g.is_finite() && self.g >= 0.0) {
            return fail("g", "must be finite and >= 0");
        }
        if self.n_sites < 3 {
            return fail("n_sites", "must be >= 3");
        }
        if self.d < 1 || self.d >= self.n_sites - 1 {
            return fail("d", "must satisfy 1 <= d < n_sites - 1");
        }
        Ok(self)
    }
}

/// A point `(k, ω_k)` on the lattice dispersion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionPoint {
    pub k: f64,
    pub omega_k: f64,
}

/// `ω_k = ω_c − 2ξ cos k` for `0 < k < π`.
pub fn dispersion(params: &SystemParams, k: f64) -> Result<DispersionPoint> {
    if !(k > 0.0 && k < PI) {
        return Err(Error::Domain(format!("wavenumber k = {k} not in (0, π)")));
    }
    Ok(DispersionPoint {
        k,
        omega_k: band_energy(params, k),
    })
}

/// Unchecked dispersion, used where `k` is produced internally.
#[inline]
pub(crate) fn band_energy(params: &SystemParams, k: f64) -> f64 {
    params.omega_c - 2.0 * params.xi * k.cos()
}

/// Inverse dispersion for an energy strictly inside the band.
pub fn band_wavenumber(params: &SystemParams, energy: f64) -> Option<f64> {
    let x = (params.omega_c - energy) / (2.0 * params.xi);
    (x > -1.0 && x < 1.0).then(|| x.acos())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emission_regimes_are_valid() {
        let p = SystemParams::new(0.0, 0.5, 3, 102);
        assert_eq!(p.validate(), Ok(p));
    }

    #[test]
    fn negative_hop_rejected() {
        let p = SystemParams::default().with_xi(-1.0);
        match p.validate() {
            Err(Error::InvalidParams { field, .. }) => assert_eq!(field, "xi"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn emitter_next_to_far_end_rejected() {
        let p = SystemParams::new(0.0, 0.5, 101, 102);
        match p.validate() {
            Err(Error::InvalidParams { field, .. }) => assert_eq!(field, "d"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(SystemParams::new(0.0, 0.5, 100, 102).validate().is_ok());
        assert!(SystemParams::new(0.0, 0.5, 0, 102).validate().is_err());
        assert!(SystemParams::new(0.0, -0.1, 3, 102).validate().is_err());
    }

    #[test]
    fn dispersion_values() {
        let p = SystemParams::default().with_omega_c(0.3);
        assert!((dispersion(&p, PI / 2.0).unwrap().omega_k - 0.3).abs() < 1e-15);
        assert!((dispersion(&p, PI / 3.0).unwrap().omega_k - (0.3 - 1.0)).abs() < 1e-15);
        assert!((dispersion(&p, 1e-9).unwrap().omega_k - (0.3 - 2.0)).abs() < 1e-12);
        assert!(matches!(dispersion(&p, 0.0), Err(Error::Domain(_))));
        assert!(matches!(dispersion(&p, PI), Err(Error::Domain(_))));
        assert!(matches!(dispersion(&p, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn config_keys_are_exact() {
        let json = r#"{"omega_c":0.0,"xi":1.0,"delta_c":-1.0,"g":1.2,"d":3,"n_sites":400}"#;
        let p: SystemParams = serde_json::from_str(json).unwrap();
        assert_eq!(p, SystemParams::new(-1.0, 1.2, 3, 400));
        let bad = r#"{"omega_c":0.0,"xi":1.0,"detuning":-1.0,"g":1.2,"d":3,"n_sites":400}"#;
        assert!(serde_json::from_str::<SystemParams>(bad).is_err());
    }

    #[test]
    fn inverse_dispersion() {
        let p = SystemParams::default();
        let k = band_wavenumber(&p, -1.0).unwrap();
        assert!((k - PI / 3.0).abs() < 1e-15);
        assert!(band_wavenumber(&p, 2.0).is_none());
    }
}

//! The bound state in the continuum.
//!
//! When `sin(Kd) = 0` with `ω_K = Ω` the standing wave `sin(Kj)` between the
//! wall and the emitter has a node at the coupled site, so no photon leaks
//! past it. The state is degenerate with the bare emitter.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::SiteProfile;
use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Tolerance on `|cos(mπ/d) + Δ_c/2ξ|` for a detuning to count as a BIC.
pub const BIC_MATCH_TOL: f64 = 1e-12;
const NODE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundStateInContinuum {
    /// `m` in `K = mπ/d`.
    pub mode_index: usize,
    #[serde(rename = "K")]
    pub k: f64,
    pub energy: f64,
    pub c_emitter: f64,
    pub a_photon: f64,
    d: usize,
}

/// `sin(nπ/d)`, exactly zero when `n` is a multiple of `d`.
fn sin_rational(n: usize, d: usize) -> f64 {
    let n = n % (2 * d);
    if n.is_multiple_of(d) {
        0.0
    } else {
        (n as f64 * PI / d as f64).sin()
    }
}

impl BoundStateInContinuum {
    pub fn photon_amplitude(&self, j: usize) -> f64 {
        if j > self.d {
            return 0.0;
        }
        self.a_photon * sin_rational(self.mode_index * j, self.d)
    }
}

impl SiteProfile for BoundStateInContinuum {
    fn coupled_site(&self) -> usize {
        self.d
    }

    fn site_amplitude(&self, j: usize) -> Complex64 {
        Complex64::new(self.photon_amplitude(j), 0.0)
    }

    fn emitter_amplitude(&self) -> Complex64 {
        Complex64::new(self.c_emitter, 0.0)
    }
}

/// Detects the BIC for the given detuning, if any.
pub fn bic_find(params: &SystemParams) -> Result<Option<BoundStateInContinuum>> {
    let p = params.validate()?;
    if p.g == 0.0 || p.delta_c.abs() >= 2.0 * p.xi {
        return Ok(None);
    }
    let target = -p.delta_c / (2.0 * p.xi);
    let Some(m) = (1..p.d).find(|&m| ((m as f64 * PI / p.d as f64).cos() - target).abs() < BIC_MATCH_TOL)
    else {
        return Ok(None);
    };
    let k = m as f64 * PI / p.d as f64;
    let (c_emitter, a_photon) = amplitudes(&p, k, m);
    Ok(Some(BoundStateInContinuum {
        mode_index: m,
        k,
        // degenerate with the bare emitter by construction
        energy: p.omega(),
        c_emitter,
        a_photon,
        d: p.d,
    }))
}

/// Emitter and photon amplitudes `(C_I, A_I)` of the BIC at wavenumber `K`.
pub fn bic_amplitudes(params: &SystemParams, k: f64) -> Result<(f64, f64)> {
    let p = params.validate()?;
    let d = p.d as f64;
    if (k * d).sin().abs() > NODE_TOL {
        return Err(Error::Domain(format!(
            "sin(K d) = {} is not zero for K = {k}",
            (k * d).sin()
        )));
    }
    let m = (k * d / PI).round();
    if m < 1.0 || m >= d {
        return Err(Error::Domain(format!("K = {k} is not an interior mode mπ/{}", p.d)));
    }
    Ok(amplitudes(&p, k, m as usize))
}

fn amplitudes(p: &SystemParams, k: f64, m: usize) -> (f64, f64) {
    let d = p.d as f64;
    let (s, c) = (k.sin(), (k * d).cos());
    let xi2 = p.xi * p.xi;
    let g2 = p.g * p.g;
    let c_i = (2.0 * xi2 * s * s / (2.0 * xi2 * s * s + d * g2 * c * c)).sqrt();
    let a_i = -p.g * c / (xi2 * s * s + d * g2 * c * c / 2.0).sqrt();
    let photon: f64 = (1..=p.d).map(|j| sin_rational(m * j, p.d).powi(2)).sum();
    let norm = (c_i * c_i + a_i * a_i * photon).sqrt();
    (c_i / norm, a_i / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resonant_even_site_has_bic() {
        let b = bic_find(&SystemParams::new(0.0, 0.5, 4, 102)).unwrap().unwrap();
        assert_eq!(b.mode_index, 2);
        assert!((b.k - PI / 2.0).abs() < 1e-15);
        assert_eq!(b.energy, 0.0);
        assert!((b.c_emitter * b.c_emitter - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn resonant_odd_site_has_none() {
        assert!(bic_find(&SystemParams::new(0.0, 0.5, 3, 102)).unwrap().is_none());
        assert!(bic_find(&SystemParams::new(0.0, 1.5, 3, 102)).unwrap().is_none());
    }

    #[test]
    fn red_detuned_d3_has_bic() {
        let b = bic_find(&SystemParams::new(-1.0, 0.5, 3, 102)).unwrap().unwrap();
        assert_eq!(b.mode_index, 1);
        assert!((b.k - PI / 3.0).abs() < 1e-15);
        assert_eq!(b.energy, -1.0);
        assert!(bic_find(&SystemParams::new(-1.0, 0.5, 4, 102)).unwrap().is_none());
    }

    #[test]
    fn decoupled_and_out_of_band() {
        assert!(bic_find(&SystemParams::new(0.0, 0.0, 4, 102)).unwrap().is_none());
        assert!(bic_find(&SystemParams::new(-2.0, 0.5, 4, 102)).unwrap().is_none());
        assert!(bic_find(&SystemParams::new(-3.0, 0.5, 4, 102)).unwrap().is_none());
    }

    #[test]
    fn near_miss_detuning_is_not_a_bic() {
        assert!(bic_find(&SystemParams::new(1e-9, 0.5, 4, 102)).unwrap().is_none());
    }

    #[test]
    fn closed_form_amplitudes() {
        let p = SystemParams::new(0.0, 0.5, 4, 102);
        let (c, a) = bic_amplitudes(&p, PI / 2.0).unwrap();
        assert!((c - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((a * a - 1.0 / 6.0).abs() < 1e-15);
        let sum: f64 = (1..=4).map(|j| (PI * j as f64 / 2.0).sin().powi(2)).sum();
        assert!((c * c + a * a * sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn decoupling_limit() {
        let (c, a) = bic_amplitudes(&SystemParams::new(0.0, 1e-9, 4, 102), PI / 2.0).unwrap();
        assert!((c - 1.0).abs() < 1e-15);
        assert!(a.abs() < 1e-8);
    }

    #[test]
    fn non_node_wavenumber_rejected() {
        let p = SystemParams::new(0.0, 0.5, 4, 102);
        assert!(matches!(bic_amplitudes(&p, 1.0), Err(Error::Domain(_))));
        assert!(matches!(bic_amplitudes(&p, PI), Err(Error::Domain(_))));
    }

    #[test]
    fn confined_between_wall_and_emitter() {
        let b = bic_find(&SystemParams::new(-1.0, 0.8, 3, 102)).unwrap().unwrap();
        assert_eq!(b.photon_amplitude(3), 0.0);
        for j in 4..50 {
            assert_eq!(b.photon_amplitude(j), 0.0);
        }
        assert!(b.photon_amplitude(1) != 0.0);
    }
}

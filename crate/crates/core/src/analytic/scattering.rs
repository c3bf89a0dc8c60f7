//! Scattering states of the band.
//!
//! A wave `e^{-ik(j-d)}` incident from the open end reflects off the
//! emitter-plus-wall with amplitude `r_k`; the region `j <= d` carries the
//! standing wave `A_k sin(kj)` and the emitter is excited with `C_k`.

use num_complex::Complex64;
use serde::Serialize;

use super::SiteProfile;
use crate::error::{Error, Result};
use crate::params::{band_energy, SystemParams};

const SINGULAR_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringAmplitudes {
    pub k: f64,
    pub energy: f64,
    pub r_k: Complex64,
    pub c_k: Complex64,
    pub a_k: Complex64,
    #[serde(skip)]
    d: usize,
}

impl SiteProfile for ScatteringAmplitudes {
    fn coupled_site(&self) -> usize {
        self.d
    }

    fn site_amplitude(&self, j: usize) -> Complex64 {
        if j < self.d {
            self.a_k * (self.k * j as f64).sin()
        } else {
            let phase = self.k * (j as f64 - self.d as f64);
            Complex64::from_polar(1.0, -phase) + self.r_k * Complex64::from_polar(1.0, phase)
        }
    }

    fn emitter_amplitude(&self) -> Complex64 {
        self.c_k
    }
}

/// Reflection and excitation amplitudes at wavenumber `k`.
pub fn scattering(params: &SystemParams, k: f64) -> Result<ScatteringAmplitudes> {
    let p = params.validate()?;
    crate::params::dispersion(&p, k)?;
    let energy = band_energy(&p, k);
    let g2 = p.g * p.g;
    let sin_kd = (k * p.d as f64).sin();
    let weight = p.xi * (energy - p.omega()) * k.sin();
    let kd = Complex64::from_polar(1.0, k * p.d as f64);

    let numerator = g2 * sin_kd + weight * kd;
    let denominator = g2 * sin_kd + weight * kd.conj();
    if denominator.norm() < SINGULAR_TOL * (g2 + p.xi * p.xi) {
        return Err(Error::SingularPoint { k });
    }
    let minus_2i = Complex64::new(0.0, -2.0);
    Ok(ScatteringAmplitudes {
        k,
        energy,
        r_k: -numerator / denominator,
        c_k: minus_2i * p.g * p.xi * k.sin() * sin_kd / denominator,
        a_k: minus_2i * weight / denominator,
        d: p.d,
    })
}

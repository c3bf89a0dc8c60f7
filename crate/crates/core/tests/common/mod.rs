#![allow(dead_code)]

use cra_core::analytic::SiteProfile;
use cra_core::SystemParams;

/// Largest residual of `(H − E)ψ` for the semi-infinite stencil over sites
/// `1..j_max` and the emitter row.
pub fn stencil_residual<S: SiteProfile>(state: &S, p: &SystemParams, energy: f64, j_max: usize) -> f64 {
    let c = state.emitter_amplitude();
    let mut worst = (p.omega() * c + p.g * state.site_amplitude(p.d) - energy * c).norm();
    for j in 1..j_max {
        let psi = state.site_amplitude(j);
        let left = state.site_amplitude(j - 1);
        let right = state.site_amplitude(j + 1);
        let mut h = p.omega_c * psi - p.xi * (left + right);
        if j == p.d {
            h += p.g * c;
        }
        worst = worst.max((h - energy * psi).norm());
    }
    worst
}

/// The four emission panels: (Δ_c, d).
pub const PANELS: [(f64, usize); 4] = [(0.0, 3), (-1.0, 4), (0.0, 4), (-1.0, 3)];

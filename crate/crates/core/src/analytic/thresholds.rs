use serde::Serialize;

use super::Branch;
use crate::error::Result;
use crate::params::SystemParams;

/// Critical couplings beyond which each outside-band bound state detaches
/// from its band edge. Zero means the state exists for every `g > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub g_u: f64,
    pub g_l: f64,
}

impl Thresholds {
    pub fn for_branch(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Upper => self.g_u,
            Branch::Lower => self.g_l,
        }
    }

    /// Whether the bound state on `branch` exists at coupling `g`.
    pub fn exists(&self, branch: Branch, g: f64) -> bool {
        g > 0.0 && g > self.for_branch(branch)
    }
}

/// `g_u = √((2ξ² − ξΔ_c)/d)` and `g_l = √((2ξ² + ξΔ_c)/d)`; a branch whose
/// band edge already lies on the far side of Ω is unconditional.
pub fn thresholds(params: &SystemParams) -> Result<Thresholds> {
    let p = params.validate()?;
    Ok(thresholds_unchecked(p.xi, p.delta_c, p.d))
}

pub(crate) fn thresholds_unchecked(xi: f64, delta_c: f64, d: usize) -> Thresholds {
    let d = d as f64;
    let g_u = if delta_c < 2.0 * xi {
        ((2.0 * xi * xi - xi * delta_c) / d).sqrt()
    } else {
        0.0
    };
    let g_l = if delta_c > -2.0 * xi {
        ((2.0 * xi * xi + xi * delta_c) / d).sqrt()
    } else {
        0.0
    };
    Thresholds { g_u, g_l }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(delta_c: f64, d: usize) -> Thresholds {
        thresholds(&SystemParams::new(delta_c, 0.5, d, 102)).unwrap()
    }

    #[test]
    fn resonant_thresholds_coincide() {
        let t = th(0.0, 3);
        assert!((t.g_u - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(t.g_u, t.g_l);
        assert!((t.g_u - 0.81650).abs() < 1e-5);
    }

    #[test]
    fn red_detuned_thresholds() {
        let t = th(-1.0, 4);
        assert!((t.g_u - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((t.g_l - 0.5).abs() < 1e-15);
    }

    #[test]
    fn emitter_below_band_binds_lower_always() {
        let t = th(-3.0, 3);
        assert_eq!(t.g_l, 0.0);
        assert!((t.g_u - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((t.g_u - 1.29099).abs() < 1e-5);
        assert!(t.exists(Branch::Lower, 1e-3));
        assert!(!t.exists(Branch::Lower, 0.0));
    }

    #[test]
    fn emitter_above_band_binds_upper_always() {
        let t = th(2.5, 2);
        assert_eq!(t.g_u, 0.0);
        assert!((t.g_l - (4.5f64 / 2.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hop_scaling() {
        // thresholds scale linearly with ξ at fixed Δ_c/ξ
        let p = SystemParams::new(-2.0, 0.5, 4, 102).with_xi(2.0);
        let t = thresholds(&p).unwrap();
        let t1 = th(-1.0, 4);
        assert!((t.g_u - 2.0 * t1.g_u).abs() < 1e-14);
        assert!((t.g_l - 2.0 * t1.g_l).abs() < 1e-14);
    }
}

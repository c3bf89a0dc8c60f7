mod common;

use std::f64::consts::PI;

use common::stencil_residual;
use cra_core::analytic::*;
use cra_core::{dispersion, Error, SystemParams};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SystemParams> {
    (-3.0f64..3.0, 0.0f64..3.0, 1usize..8).prop_map(|(dc, g, d)| SystemParams::new(dc, g, d, 102))
}

proptest! {
    #[test]
    fn reflection_is_unitary_and_continuous(p in params(), k in 0.01f64..(PI - 0.01)) {
        match scattering(&p, k) {
            Ok(s) => {
                prop_assert!((s.r_k.norm() - 1.0).abs() < 1e-12);
                let inside = s.a_k * (k * p.d as f64).sin();
                prop_assert!((inside - (1.0 + s.r_k)).norm() < 1e-12);
            }
            Err(Error::SingularPoint { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
    }

    #[test]
    fn scattering_state_solves_the_stencil(p in params(), k in 0.05f64..(PI - 0.05)) {
        if let Ok(s) = scattering(&p, k) {
            let scale = 1.0 + s.a_k.norm() + s.c_k.norm();
            prop_assert!(stencil_residual(&s, &p, s.energy, p.d + 20) < 1e-10 * scale);
        }
    }

    #[test]
    fn bound_states_solve_the_stencil(p in params()) {
        for s in boc_solve(&p).unwrap() {
            prop_assert!(!s.shallow || s.kappa < SHALLOW_KAPPA);
            let (lo, hi) = p.band_edges();
            prop_assert!(s.energy > hi || s.energy < lo);
            prop_assert!(stencil_residual(&s, &p, s.energy, p.d + 40) < 1e-10);
            prop_assert!(boc_residual(&p, s.branch, s.energy).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn bound_states_are_normalized(p in params()) {
        for s in boc_solve(&p).unwrap() {
            if s.kappa < 1e-2 {
                continue;
            }
            // truncate the tail once it drops below 1e-16
            let mut total = s.c_emitter * s.c_emitter;
            let mut j = 1;
            loop {
                let a = s.photon_amplitude(j);
                total += a * a;
                if j > p.d && a.abs() < 1e-16 {
                    break;
                }
                j += 1;
            }
            prop_assert!((total - 1.0).abs() < 1e-10, "norm {}", total);
        }
    }

    #[test]
    fn resonant_residuals_mirror(x in 2.0001f64..8.0, g in 0.0f64..3.0, d in 1usize..8) {
        let p = SystemParams::new(0.0, g, d, 102);
        let up = boc_residual(&p, Branch::Upper, x).unwrap();
        let lo = boc_residual(&p, Branch::Lower, -x).unwrap();
        prop_assert!((up + lo).abs() < 1e-12 * up.abs().max(1.0));
    }

    #[test]
    fn resonant_pair_is_symmetric(g in 0.0f64..3.0, d in 1usize..8) {
        let s = boc_solve(&SystemParams::new(0.0, g, d, 102)).unwrap();
        prop_assert!(s.is_empty() || s.len() == 2);
        if s.len() == 2 {
            prop_assert!((s[0].energy + s[1].energy).abs() < 1e-10);
            prop_assert!((s[0].c_emitter.abs() - s[1].c_emitter.abs()).abs() < 1e-10);
        }
    }

    #[test]
    fn thresholds_are_sharp(dc in -1.95f64..1.95, d in 1usize..8) {
        let p = SystemParams::new(dc, 0.0, d, 102);
        let th = thresholds(&p).unwrap();
        for branch in [Branch::Upper, Branch::Lower] {
            let g_c = th.for_branch(branch);
            let above = boc_solve(&p.with_g(g_c * (1.0 + 1e-3))).unwrap();
            let below = boc_solve(&p.with_g(g_c * (1.0 - 1e-3))).unwrap();
            prop_assert!(above.iter().any(|s| s.branch == branch));
            prop_assert!(!below.iter().any(|s| s.branch == branch));
        }
    }

    #[test]
    fn dispersion_is_increasing(a in 1e-6f64..(PI - 1e-6), b in 1e-6f64..(PI - 1e-6)) {
        let p = SystemParams::default();
        let (ea, eb) = (dispersion(&p, a).unwrap().omega_k, dispersion(&p, b).unwrap().omega_k);
        prop_assert!((-2.0..=2.0).contains(&ea));
        if a < b {
            prop_assert!(ea < eb);
        }
    }

    #[test]
    fn bic_normalization_identity(d in 2usize..12, m_frac in 0.0f64..1.0, g in 1e-3f64..3.0) {
        let m = 1 + ((d - 1) as f64 * m_frac).floor().min((d - 2) as f64) as usize;
        let k = m as f64 * PI / d as f64;
        let p = SystemParams::new(-2.0 * k.cos(), g, d, 102);
        let b = bic_find(&p).unwrap().expect("BIC by construction");
        prop_assert_eq!(b.mode_index, m);
        let photon: f64 = (1..=d).map(|j| b.photon_amplitude(j).powi(2)).sum();
        prop_assert!((b.c_emitter.powi(2) + photon - 1.0).abs() < 1e-10);
        prop_assert!(stencil_residual(&b, &p, b.energy, d + 10) < 1e-10);
        prop_assert_eq!(b.energy, p.omega());
        // the BIC is g-independent in existence
        prop_assert!(bic_find(&p.with_g(g * 0.5)).unwrap().is_some());
    }
}

#[test]
fn energies_follow_omega_c_shift() {
    for (dc, g, d) in [(0.0, 1.5, 3), (-1.0, 1.2, 3), (-1.0, 0.7, 4), (-3.0, 0.4, 2)] {
        let base = SystemParams::new(dc, g, d, 102);
        let shifted = base.with_omega_c(5.0);
        let (a, b) = (boc_solve(&base).unwrap(), boc_solve(&shifted).unwrap());
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((y.energy - 5.0 - x.energy).abs() < 1e-12);
            assert!((y.c_emitter - x.c_emitter).abs() < 1e-10);
        }
        match (bic_find(&base).unwrap(), bic_find(&shifted).unwrap()) {
            (Some(x), Some(y)) => {
                assert!((y.energy - 5.0 - x.energy).abs() < 1e-12);
                assert_eq!(x.c_emitter, y.c_emitter);
            }
            (None, None) => {}
            _ => panic!("BIC presence changed under a frequency shift"),
        }
    }
}

#[test]
fn covariant_under_hop_rescaling() {
    let unit = SystemParams::new(-1.0, 1.2, 3, 102);
    let scaled = SystemParams { xi: 2.5, delta_c: -2.5, g: 3.0, ..unit };
    let (a, b) = (boc_solve(&unit).unwrap(), boc_solve(&scaled).unwrap());
    assert_eq!(a.len(), 2);
    for (x, y) in a.iter().zip(&b) {
        assert!((y.energy - 2.5 * x.energy).abs() < 1e-12);
        assert!((y.kappa - x.kappa).abs() < 1e-12);
        assert!((y.c_emitter - x.c_emitter).abs() < 1e-10);
    }
    let (x, y) = (bic_find(&unit).unwrap().unwrap(), bic_find(&scaled).unwrap().unwrap());
    assert!((x.c_emitter - y.c_emitter).abs() < 1e-12);
    let (tx, ty) = (thresholds(&unit).unwrap(), thresholds(&scaled).unwrap());
    assert!((ty.g_u - 2.5 * tx.g_u).abs() < 1e-12);
}

#[test]
fn profiles_have_the_documented_shape() {
    let p = SystemParams::new(-1.0, 1.2, 3, 102);
    let bic = bic_find(&p).unwrap().unwrap();
    let prof = wavefunction_profile(&bic, 12).unwrap();
    assert!(prof[3..].iter().all(|z| z.norm() == 0.0));
    assert!(wavefunction_profile(&bic, 2).is_err());

    let states = boc_solve(&p).unwrap();
    let upper = states.iter().find(|s| s.branch == Branch::Upper).unwrap();
    let prof = wavefunction_profile(upper, 12).unwrap();
    for (j, z) in prof.iter().enumerate() {
        let sign = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
        assert!(z.re * sign > 0.0);
    }
    let lower = states.iter().find(|s| s.branch == Branch::Lower).unwrap();
    assert!(wavefunction_profile(lower, 12).unwrap().iter().all(|z| z.re > 0.0));

    // scattering interior/exterior agree at the emitter on a k-grid
    for i in 1..100 {
        let k = i as f64 * PI / 100.0 + 1e-4;
        let s = scattering(&p, k).unwrap();
        let interior = s.a_k * (k * 3.0).sin();
        assert!((interior - (1.0 + s.r_k)).norm() < 1e-12);
    }
}

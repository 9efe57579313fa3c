use critqfi::analysis::{peak_qfi, sensitivity, EvalSettings, PeakSearch};
use critqfi::models::{lz_ground_state, LmgParams, LzParams, TfimParams};
use critqfi::qfi::{
    lmg_qfim_numeric, lmg_thermo_qfim, lz_qfim_closed, tfim_critical_qfi, tfim_qfim_closed,
};
use critqfi::uncertainty::{averaged_qfi, GaussianBelief, Probe};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Fidelity susceptibility of real unit two-level states, with the
/// infidelity `1 - <a,b>²` written as the squared cross product.
fn lz_fidelity_qfi(omega: f64, g: f64, h: f64) -> f64 {
    let at = |w: f64| lz_ground_state(&LzParams::new(w, g).unwrap()).unwrap();
    let (a, b) = (at(omega - h), at(omega + h));
    let cross = a[0] * b[1] - a[1] * b[0];
    4.0 * cross * cross / (2.0 * h).powi(2)
}

#[test]
fn lz_closed_form_matches_fidelity() {
    for (omega, g) in [(1.0, 1.0), (0.5, 2.0), (3.0, -0.7)] {
        let closed = lz_qfim_closed(&LzParams::new(omega, g).unwrap()).unwrap().i_oo;
        assert!(rel(closed, lz_fidelity_qfi(omega, g, 1e-4)) < 1e-6);
    }
}

#[test]
fn tfim_critical_value_and_peak() {
    for n in [2, 6, 20, 64] {
        let at = tfim_qfim_closed(&TfimParams::new(1.0, 1.0, n).unwrap()).unwrap().i_oo;
        assert!(rel(at, tfim_critical_qfi(n, 1.0)) < 1e-12);
        for g in [0.9, 1.1] {
            let off = tfim_qfim_closed(&TfimParams::new(1.0, g, n).unwrap()).unwrap().i_oo;
            assert!(off < at);
        }
    }
}

#[test]
fn lmg_approaches_thermodynamic_limit() {
    let thermo = lmg_thermo_qfim(1.0, 0.5).unwrap();
    let small = lmg_qfim_numeric(&LmgParams::new(1.0, 0.5, 50).unwrap()).unwrap();
    let large = lmg_qfim_numeric(&LmgParams::new(1.0, 0.5, 800).unwrap()).unwrap();
    let (e_small, e_large) = (rel(small.i_gg, thermo.i_gg), rel(large.i_gg, thermo.i_gg));
    assert!(e_large < e_small, "{e_small} {e_large}");
    assert!(e_large < 0.02, "{e_large}");
}

#[test]
fn averaging_lowers_the_peak() {
    let settings = EvalSettings::default();
    let search = PeakSearch::default();
    for probe in [Probe::LandauZener, Probe::Ising { n_spins: 12 }, Probe::Lmg { n_spins: 40 }] {
        let sharp = peak_qfi(probe, 0.0, &search, &settings).unwrap().value;
        let blurred = peak_qfi(probe, 0.2, &search, &settings).unwrap().value;
        assert!(blurred < sharp, "{probe:?}: {blurred} vs {sharp}");
    }
    let lz = sensitivity(Probe::LandauZener, 1.0, 0.0, &settings).unwrap().value;
    assert!(rel(lz, 0.25) < 1e-15);
}

proptest! {
    #[test]
    fn tfim_qfi_scales_as_inverse_square(n in 1usize..20, g in 0.05f64..2.0, s in 0.2f64..5.0) {
        let n = 2 * n;
        let base = tfim_qfim_closed(&TfimParams::new(1.0, g, n).unwrap()).unwrap();
        let scaled = tfim_qfim_closed(&TfimParams::new(s, s * g, n).unwrap()).unwrap();
        prop_assert!(rel(scaled.i_oo * s * s, base.i_oo) < 1e-9);
        prop_assert!(rel(scaled.i_gg * s * s, base.i_gg) < 1e-9);
    }

    #[test]
    fn averaged_lz_is_bounded_by_the_sharp_maximum(g in 0.2f64..3.0, sigma in 0.01f64..1.0) {
        let belief = GaussianBelief::new(g, sigma, 64).unwrap();
        let value = averaged_qfi(Probe::LandauZener, 1.0, &belief).unwrap();
        prop_assert!(value >= 0.0);
        prop_assert!(value <= 0.25 + 1e-12);
    }
}

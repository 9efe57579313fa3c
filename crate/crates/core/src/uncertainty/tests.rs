use proptest::prelude::*;

use super::*;
use crate::models::{LmgParams, LzParams, TfimParams};
use crate::qfi::{lmg_qfim_numeric, lz_qfim_closed, tfim_qfim_closed};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn belief(mean: f64, sigma: f64, nodes: usize) -> GaussianBelief {
    GaussianBelief::new(mean, sigma, nodes).unwrap()
}

fn dense_parts(probe: Probe, omega: f64, b: &GaussianBelief, route: DerivativeRoute) -> (ComplexMatrix, ComplexMatrix) {
    match averaged_state_dense_with(probe, omega, b, route).unwrap() {
        AveragedState::Dense { state, d_omega } => (state.eigen.reconstruct(), d_omega),
        AveragedState::LowRank(_) => unreachable!(),
    }
}

fn single(probe: Probe, omega: f64, g: f64) -> f64 {
    match probe {
        Probe::LandauZener => lz_qfim_closed(&LzParams::new(omega, g).unwrap()).unwrap().i_oo,
        Probe::Ising { n_spins } => {
            tfim_qfim_closed(&TfimParams::new(omega, g, n_spins).unwrap()).unwrap().i_oo
        }
        Probe::Lmg { n_spins } => {
            lmg_qfim_numeric(&LmgParams::new(omega, g, n_spins).unwrap()).unwrap().i_oo
        }
    }
}

#[test]
fn belief_validation() {
    assert!(GaussianBelief::new(1.0, -0.1, 8).is_err());
    assert!(GaussianBelief::new(1.0, 0.1, 0).is_err());
    assert!(GaussianBelief::new(1.0, 0.1, 513).is_err());
    assert!(GaussianBelief::new(f64::NAN, 0.1, 8).is_err());
    assert!(GaussianBelief::point(1.0).unwrap().is_point_mass());
    assert_eq!(GaussianBelief::with_default_nodes(1.0, 0.1).unwrap().nodes, 64);
}

#[test]
fn point_mass_recovers_ground_state() {
    for probe in [Probe::LandauZener, Probe::Ising { n_spins: 8 }, Probe::Lmg { n_spins: 12 }] {
        let b = belief(0.8, 0.0, 1);
        let state = averaged_state_dense(probe, 1.0, &b).unwrap();
        let ev = state.eigenvalues().unwrap();
        assert!((ev.last().unwrap() - 1.0).abs() < 1e-12);
        assert!(ev[..ev.len() - 1].iter().all(|l| l.abs() < 1e-12));
        let want = single(probe, 1.0, 0.8);
        assert!(rel(state.qfi().unwrap(), want) < 1e-10, "{probe:?}");
        assert!(rel(averaged_qfi_lowrank(probe, 1.0, &b).unwrap(), want) < 1e-12, "{probe:?}");
    }
}

#[test]
fn two_level_mixture_has_rank_at_most_two() {
    let state = averaged_state_dense(Probe::LandauZener, 1.0, &belief(1.0, 0.1, 64)).unwrap();
    let ev = state.eigenvalues().unwrap();
    assert_eq!(ev.len(), 2);
    assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn ising_mixture_is_a_density_matrix() {
    let state = averaged_state_dense(Probe::Ising { n_spins: 8 }, 1.0, &belief(1.0, 0.2, 64)).unwrap();
    let ev = state.eigenvalues().unwrap();
    assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    assert!(ev.iter().all(|&l| l >= -1e-12));
}

#[test]
fn small_sigma_recovers_single_parameter_value() {
    let q = averaged_qfi(Probe::LandauZener, 1.0, &belief(1.0, 1e-8, 64)).unwrap();
    assert!(rel(q, 0.25) < 1e-4);
}

#[test]
fn huge_sigma_destroys_information() {
    let q = averaged_qfi(Probe::LandauZener, 1.0, &belief(1.0, 1e3, 64)).unwrap();
    assert!(q >= -1e-10 && q <= 2.5e-4, "{q}");
}

#[test]
fn uncertainty_lowers_critical_sensitivity() {
    let probe = Probe::Ising { n_spins: 20 };
    let q = averaged_qfi_lowrank(probe, 1.0, &belief(1.0, 0.05, 64)).unwrap();
    assert!(q < single(probe, 1.0, 1.0));
}

#[test]
fn lowrank_matches_dense() {
    let cases = [
        (Probe::Ising { n_spins: 8 }, 1.0, 0.1, 32),
        (Probe::Ising { n_spins: 8 }, 0.9, 0.5, 64),
        (Probe::Ising { n_spins: 12 }, 1.1, 0.01, 64),
        (Probe::Lmg { n_spins: 30 }, 1.0, 0.1, 16),
        (Probe::Lmg { n_spins: 60 }, 0.8, 0.3, 48),
        (Probe::LandauZener, 1.0, 0.3, 64),
    ];
    for (probe, mean, sigma, m) in cases {
        let b = belief(mean, sigma, m);
        for route in [DerivativeRoute::WeightScore, DerivativeRoute::SampledProjector] {
            let d = averaged_state_dense_with(probe, 1.0, &b, route).unwrap().qfi().unwrap();
            let state = averaged_state_lowrank_with(probe, 1.0, &b, route).unwrap();
            let l = state.qfi().unwrap();
            assert!(rel(d, l) < 1e-8, "{probe:?} σ={sigma} {route:?}: {d} vs {l}");
            if let AveragedState::LowRank(lr) = state {
                assert!(lr.gram_residual < 1e-10);
                assert!(lr.rank() <= lr.sampled);
            }
        }
    }
}

#[test]
fn projector_route_matches_finite_difference() {
    let (probe, b, h) = (Probe::Ising { n_spins: 6 }, belief(0.9, 0.2, 16), 1e-5);
    let route = DerivativeRoute::SampledProjector;
    let (_, d) = dense_parts(probe, 1.0, &b, route);
    let (hi, _) = dense_parts(probe, 1.0 + h, &b, route);
    let (lo, _) = dense_parts(probe, 1.0 - h, &b, route);
    let scale = d.max_abs();
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            let fd = (hi[(i, j)] - lo[(i, j)]) / (2.0 * h);
            assert!((fd - d[(i, j)]).norm() < 1e-7 * scale);
        }
    }
}

#[test]
fn weight_score_route_matches_finite_difference_of_converged_mixture() {
    let (probe, h) = (Probe::LandauZener, 1e-4);
    let b = belief(0.7, 0.3, 64);
    let (_, d) = dense_parts(probe, 1.0, &b, DerivativeRoute::WeightScore);
    let fine = belief(0.7, 0.3, 512);
    let (hi, _) = dense_parts(probe, 1.0 + h, &fine, DerivativeRoute::SampledProjector);
    let (lo, _) = dense_parts(probe, 1.0 - h, &fine, DerivativeRoute::SampledProjector);
    for i in 0..2 {
        for j in 0..2 {
            let fd = (hi[(i, j)] - lo[(i, j)]) / (2.0 * h);
            assert!((fd - d[(i, j)]).norm() < 1e-7, "{fd} vs {}", d[(i, j)]);
        }
    }
}

#[test]
fn routes_agree_when_both_converge() {
    let probe = Probe::Ising { n_spins: 12 };
    let b = belief(1.0, 0.003, 64);
    let a = averaged_qfi_lowrank(probe, 1.0, &b).unwrap();
    let p = averaged_state_lowrank_with(probe, 1.0, &b, DerivativeRoute::SampledProjector)
        .unwrap()
        .qfi()
        .unwrap();
    assert!(rel(a, p) < 1e-6, "{a} vs {p}");
}

#[test]
fn route_resolution() {
    let small = belief(1.0, 1e-4, 64);
    let large = belief(1.0, 0.1, 64);
    let point = belief(1.0, 0.0, 1);
    assert_eq!(DerivativeRoute::Auto.resolve(1.0, &small), DerivativeRoute::SampledProjector);
    assert_eq!(DerivativeRoute::Auto.resolve(1.0, &large), DerivativeRoute::WeightScore);
    assert_eq!(DerivativeRoute::WeightScore.resolve(1.0, &point), DerivativeRoute::SampledProjector);
    assert_eq!(DerivativeRoute::SampledProjector.resolve(1.0, &large), DerivativeRoute::SampledProjector);
}

#[test]
fn report_flags_convergence() {
    let opts = AveragingOptions {
        check_convergence: true,
        ..Default::default()
    };
    let r = averaged_qfi_report(Probe::Ising { n_spins: 16 }, 1.0, &belief(1.0, 0.05, 64), &opts).unwrap();
    assert_eq!(r.path, StatePath::LowRank);
    assert_eq!(r.route, DerivativeRoute::WeightScore);
    assert_eq!(r.converged, Some(true));
    let r = averaged_qfi_report(Probe::LandauZener, 1.0, &belief(1.0, 0.1, 64), &opts).unwrap();
    assert_eq!(r.path, StatePath::Dense);
    let r = averaged_qfi_report(Probe::LandauZener, 1.0, &belief(1.0, 0.0, 1), &opts).unwrap();
    assert_eq!(r.converged, Some(true));
    let r = averaged_qfi_report(Probe::LandauZener, 1.0, &belief(1.0, 0.1, 512), &opts).unwrap();
    assert_eq!(r.converged, None);
}

#[test]
fn dense_cap_enforced() {
    let b = belief(1.0, 0.1, 4);
    assert!(matches!(
        averaged_qfi(Probe::Ising { n_spins: 24 }, 1.0, &b),
        Err(crate::Error::TooLarge { .. })
    ));
    assert!(averaged_qfi_lowrank(Probe::Ising { n_spins: 64 }, 1.0, &b).is_ok());
    assert!(averaged_qfi(Probe::Ising { n_spins: 5 }, 1.0, &b).is_err());
    assert!(averaged_qfi(Probe::LandauZener, 0.0, &b).is_err());
}

#[test]
fn deterministic() {
    let probe = Probe::Ising { n_spins: 16 };
    let b = belief(1.0, 0.2, 64);
    let a = averaged_qfi_lowrank(probe, 1.0, &b).unwrap();
    for _ in 0..3 {
        assert_eq!(a.to_bits(), averaged_qfi_lowrank(probe, 1.0, &b).unwrap().to_bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn convexity_bound_and_positivity(
        mean in 0.2f64..1.8, sigma in 0.0f64..0.6, half in 1usize..9, m in 1usize..24
    ) {
        let probe = Probe::Ising { n_spins: 2 * half };
        let b = belief(mean, sigma, m);
        let q = averaged_state_lowrank_with(probe, 1.0, &b, DerivativeRoute::SampledProjector)
            .unwrap()
            .qfi()
            .unwrap();
        let rule = b.rule().unwrap();
        let bound: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&g, w)| w * single(probe, 1.0, g))
            .sum();
        prop_assert!(q >= -1e-10);
        prop_assert!(q <= bound * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn lz_decays_with_sigma(sigma in 0.05f64..2.0) {
        let a = averaged_qfi(Probe::LandauZener, 1.0, &belief(1.0, sigma, 64)).unwrap();
        let b = averaged_qfi(Probe::LandauZener, 1.0, &belief(1.0, 2.0 * sigma, 64)).unwrap();
        prop_assert!(a <= 0.25 * (1.0 + 1e-9));
        prop_assert!(b < a);
    }
}

use faer::Mat;
use num_complex::Complex64;

use super::samples::sample;
use super::{check_omega, weight_scores, AveragedState, DerivativeRoute, GaussianBelief, Probe};
use crate::error::Result;
use crate::numerics::ComplexMatrix;
use crate::qfi::SpectralState;

/// `ϱ̄` and `∂_ω ϱ̄` as explicit `d×d` matrices, with the automatic route.
pub fn averaged_state_dense(probe: Probe, omega: f64, belief: &GaussianBelief) -> Result<AveragedState> {
    averaged_state_dense_with(probe, omega, belief, DerivativeRoute::Auto)
}

pub fn averaged_state_dense_with(
    probe: Probe,
    omega: f64,
    belief: &GaussianBelief,
    route: DerivativeRoute,
) -> Result<AveragedState> {
    probe.validate()?;
    check_omega(omega)?;
    let d = probe.dense_feasible()?;
    let rule = belief.rule()?;
    let route = route.resolve(omega, belief);
    let projector = route == DerivativeRoute::SampledProjector;
    let (states, derivs) = sample(probe, omega, &rule.nodes, projector)?.explicit();
    let m = states.len();

    let x = Mat::from_fn(d, m, |i, j| states[j][i]);
    let weighted = |w: &[f64]| Mat::from_fn(d, m, |i, j| states[j][i] * w[j]);
    let rho = &weighted(&rule.weights) * x.transpose();

    let drho = match derivs {
        Some(derivs) => {
            let dx = Mat::from_fn(d, m, |i, j| derivs[j][i]);
            let half = &weighted(&rule.weights) * dx.transpose();
            Mat::from_fn(d, d, |i, j| half[(i, j)] + half[(j, i)])
        }
        None => {
            let scores = weight_scores(omega, belief, &rule.nodes);
            let w: Vec<f64> = rule.weights.iter().zip(&scores).map(|(w, s)| w * s).collect();
            let a = &weighted(&w) * x.transpose();
            Mat::from_fn(d, d, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]))
        }
    };
    let rho = Mat::from_fn(d, d, |i, j| 0.5 * (rho[(i, j)] + rho[(j, i)]));
    let to_complex = |a: &Mat<f64>| ComplexMatrix::from_fn(d, d, |i, j| Complex64::new(a[(i, j)], 0.0));

    Ok(AveragedState::Dense {
        state: SpectralState::from_density(&to_complex(&rho))?,
        d_omega: to_complex(&drho),
    })
}

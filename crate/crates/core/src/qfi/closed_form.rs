use super::{qfim_pure, qfim_pure_matrix, QfiMatrix};
use crate::error::{Error, Result};
use crate::models::{
    lmg_sector_gradients, lz_ground_state, lz_ground_state_grad, tfim_ground_state, tfim_momenta,
    LmgParams, LzParams, ParameterId, TfimParams,
};
use crate::numerics::to_complex;

/// Momentum sums `Σ_k (g², -gω, ω²) sin²k / D²` with
/// `D = g² + ω² - 2gω cos k`.
pub fn tfim_qfim_closed(params: &TfimParams) -> Result<QfiMatrix> {
    let TfimParams { omega, g, .. } = *params;
    let (mut oo, mut og, mut gg) = (0.0, 0.0, 0.0);
    for k in tfim_momenta(params.n_spins)? {
        let d = g * g + omega * omega - 2.0 * g * omega * k.cos();
        if d <= 0.0 {
            return Err(Error::SingularPoint { omega, g, k });
        }
        let w = k.sin().powi(2) / (d * d);
        oo += g * g * w;
        og -= g * omega * w;
        gg += omega * omega * w;
    }
    QfiMatrix::new(oo, og, gg)
}

/// Sum over momentum blocks of the pure-state QFIM of each two-level block
/// state, using the analytic angle derivatives.
pub fn tfim_qfim_numeric(params: &TfimParams) -> Result<QfiMatrix> {
    let state = tfim_ground_state(params)?;
    let d_omega = params.theta_grads(ParameterId::Omega)?;
    let d_g = params.theta_grads(ParameterId::Coupling)?;
    let (mut oo, mut og, mut gg) = (0.0, 0.0, 0.0);
    for (j, [c, s]) in state.block_amplitudes().into_iter().enumerate() {
        let psi = to_complex(&[c, s]);
        let block_grad = |tau: f64| to_complex(&[-0.5 * tau * s, 0.5 * tau * c]);
        let (a, b) = (block_grad(d_omega[j]), block_grad(d_g[j]));
        oo += qfim_pure(&psi, &a, &a)?;
        og += qfim_pure(&psi, &a, &b)?;
        gg += qfim_pure(&psi, &b, &b)?;
    }
    QfiMatrix::new(oo, og, gg)
}

/// `I_ωω` of the Ising chain at `g = ω`, from the cotangent sum
/// `Σ_k cot²(k/2) = N(N-1)/2`.
pub fn tfim_critical_qfi(n_spins: usize, omega: f64) -> f64 {
    let n = n_spins as f64;
    n * (n - 1.0) / (8.0 * omega * omega)
}

/// `(g², -gω, ω²) / (g² + ω²)²`.
pub fn lz_qfim_closed(params: &LzParams) -> Result<QfiMatrix> {
    let LzParams { omega, g } = *params;
    let r2 = omega * omega + g * g;
    if r2 == 0.0 || !r2.is_finite() {
        return Err(Error::DegenerateParameters { omega, g });
    }
    let s = 1.0 / (r2 * r2);
    QfiMatrix::new(g * g * s, -g * omega * s, omega * omega * s)
}

/// Pure-state QFIM of the Landau–Zener ground state from its analytic
/// gradients.
pub fn lz_qfim_numeric(params: &LzParams) -> Result<QfiMatrix> {
    let psi = to_complex(&lz_ground_state(params)?);
    let a = to_complex(&lz_ground_state_grad(params, ParameterId::Omega)?);
    let b = to_complex(&lz_ground_state_grad(params, ParameterId::Coupling)?);
    qfim_pure_matrix(&psi, &a, &b)
}

/// Thermodynamic-limit LMG QFIM `2 ∂ξ ∂ξᵀ` for the squeezing parameter
/// `ξ = ln(1 - g/ω)/4`, valid in the normal phase `g < ω`.
pub fn lmg_thermo_qfim(omega: f64, g: f64) -> Result<QfiMatrix> {
    crate::models::check_field(omega, g)?;
    if g >= omega {
        return Err(Error::OutOfPhase { omega, g });
    }
    let dw = g / (4.0 * omega * (omega - g));
    let dg = -1.0 / (4.0 * (omega - g));
    QfiMatrix::new(2.0 * dw * dw, 2.0 * dw * dg, 2.0 * dg * dg)
}

/// Pure-state QFIM of the finite-size LMG ground state with perturbative
/// gradients.
pub fn lmg_qfim_numeric(params: &LmgParams) -> Result<QfiMatrix> {
    let (psi, [dw, dg]) = lmg_sector_gradients(params)?;
    qfim_pure_matrix(&to_complex(&psi), &to_complex(&dw), &to_complex(&dg))
}

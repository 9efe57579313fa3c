//! Ground states and parameter derivatives for the three probe models:
//! Landau–Zener, the transverse-field Ising chain in momentum-block form, and
//! the LMG collective-spin model.

mod lmg;
mod lz;
mod tfim;

use serde::{Deserialize, Serialize};

pub use lmg::{
    lmg_ground_state, lmg_ground_state_grad, lmg_hamiltonian, LmgGroundState, LmgParams,
};
pub(crate) use lmg::lmg_sector_gradients;
pub use lz::{lz_ground_state, lz_ground_state_grad, lz_hamiltonian, LzParams};
pub use tfim::{
    tfim_block_energy, tfim_ground_state, tfim_momenta, tfim_overlap, tfim_state_grad_vector, tfim_state_vector,
    tfim_theta, tfim_theta_grad, TfimGroundState, TfimParams,
};

/// Which Hamiltonian parameter a derivative is taken with respect to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParameterId {
    /// The field ω being estimated.
    Omega,
    /// The control coupling g.
    Coupling,
}

impl ParameterId {
    pub const ALL: [ParameterId; 2] = [ParameterId::Omega, ParameterId::Coupling];

    pub fn label(self) -> &'static str {
        match self {
            ParameterId::Omega => "omega",
            ParameterId::Coupling => "g",
        }
    }
}

pub(crate) fn check_field(omega: f64, g: f64) -> crate::Result<()> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(crate::error::invalid(format!(
            "omega must be finite and positive, got {omega}"
        )));
    }
    if !g.is_finite() {
        return Err(crate::error::invalid(format!("g must be finite, got {g}")));
    }
    Ok(())
}

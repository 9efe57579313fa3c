//! Quantum Fisher information: pure- and mixed-state QFIM, Cramér–Rao
//! bounds, singularity detection and the model QFIMs.

mod closed_form;
mod information;
mod matrix;

pub use closed_form::{
    lmg_qfim_numeric, lmg_thermo_qfim, lz_qfim_closed, lz_qfim_numeric, tfim_critical_qfi,
    tfim_qfim_closed, tfim_qfim_numeric,
};
pub use information::{qfim_mixed, qfim_pure, qfim_pure_matrix, SpectralState};
pub use matrix::{crb_covariance_bound, crb_variance, is_singular, qfim_det, QfiMatrix};

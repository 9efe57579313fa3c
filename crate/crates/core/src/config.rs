//! Numerical tolerances shared by every module.

use serde::{Deserialize, Serialize};

/// Every tolerance the library applies, in one record.
///
/// The defaults are the values the test suites are written against; callers
/// that override them should record the override alongside their results.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Relative Hermiticity check: `max|A - A^H| <= hermitian_rel * maxabs(A)`.
    pub hermitian_rel: f64,
    /// Allowed deviation of a pure state's norm from one.
    pub normalization: f64,
    /// Allowed deviation of a density matrix trace from one.
    pub trace: f64,
    /// Eigenvalues of a density matrix below `-negative_eigenvalue` are rejected.
    pub negative_eigenvalue: f64,
    /// Pairs with `lambda_i + lambda_j <= rank_cutoff` are dropped from the mixed-state QFI.
    pub rank_cutoff: f64,
    /// `det <= singular_rel * (I_aa I_bb + I_ab^2)` counts as singular.
    pub singular_rel: f64,
    /// Relative PSD slack for a QFI matrix determinant.
    pub psd_det_rel: f64,
    /// Absolute PSD slack for QFI matrix diagonal entries.
    pub psd_diag: f64,
    /// LMG derivatives are refused below `degeneracy_rel * ||H||`.
    pub degeneracy_rel: f64,
    /// Singular-value threshold, relative to the largest, for the low-rank basis.
    pub gram_singular_rel: f64,
    /// `|I(M) - I(2M)| / I(2M)` above this marks a result as not converged.
    pub quadrature_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian_rel: 1e-12,
            normalization: 1e-10,
            trace: 1e-10,
            negative_eigenvalue: 1e-12,
            rank_cutoff: 1e-12,
            singular_rel: 1e-10,
            psd_det_rel: 1e-10,
            psd_diag: 1e-12,
            degeneracy_rel: 1e-10,
            gram_singular_rel: 1e-12,
            quadrature_rel: 1e-6,
        }
    }
}

/// Default Gauss-Hermite order for the Gaussian average.
pub const DEFAULT_QUADRATURE_ORDER: usize = 64;

use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::models::ParameterId;

/// Symmetric 2×2 quantum Fisher information matrix over `(ω, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QfiMatrix {
    pub i_oo: f64,
    pub i_og: f64,
    pub i_gg: f64,
    pub labels: (ParameterId, ParameterId),
}

impl QfiMatrix {
    /// Builds the matrix, rejecting entries that are not positive
    /// semi-definite within [`Tolerances`].
    pub fn new(i_oo: f64, i_og: f64, i_gg: f64) -> Result<Self> {
        let m = Self {
            i_oo,
            i_og,
            i_gg,
            labels: (ParameterId::Omega, ParameterId::Coupling),
        };
        m.check_psd(&Tolerances::default())?;
        Ok(m)
    }

    fn check_psd(&self, tol: &Tolerances) -> Result<()> {
        if ![self.i_oo, self.i_og, self.i_gg].iter().all(|x| x.is_finite()) {
            return Err(Error::NotPositiveSemidefinite(format!(
                "non-finite entry in {self:?}"
            )));
        }
        if self.i_oo < -tol.psd_diag || self.i_gg < -tol.psd_diag {
            return Err(Error::NotPositiveSemidefinite(format!(
                "negative diagonal ({}, {})",
                self.i_oo, self.i_gg
            )));
        }
        if self.det() < -tol.psd_det_rel * self.scale() {
            return Err(Error::NotPositiveSemidefinite(format!(
                "negative determinant {}",
                self.det()
            )));
        }
        Ok(())
    }

    pub fn entry(&self, a: ParameterId, b: ParameterId) -> f64 {
        match (a, b) {
            (ParameterId::Omega, ParameterId::Omega) => self.i_oo,
            (ParameterId::Coupling, ParameterId::Coupling) => self.i_gg,
            _ => self.i_og,
        }
    }

    /// `I_ωω I_gg - I_ωg²`.
    pub fn det(&self) -> f64 {
        self.i_oo * self.i_gg - self.i_og * self.i_og
    }

    /// Reference magnitude for the determinant: `|I_ωω I_gg| + I_ωg²`.
    pub fn scale(&self) -> f64 {
        (self.i_oo * self.i_gg).abs() + self.i_og * self.i_og
    }

    pub fn is_singular(&self) -> bool {
        self.det() <= Tolerances::default().singular_rel * self.scale()
    }

    /// Entrywise sum, as for QFI additivity over independent subsystems.
    pub fn add(&self, other: &QfiMatrix) -> QfiMatrix {
        QfiMatrix {
            i_oo: self.i_oo + other.i_oo,
            i_og: self.i_og + other.i_og,
            i_gg: self.i_gg + other.i_gg,
            labels: self.labels,
        }
    }
}

pub fn qfim_det(i: &QfiMatrix) -> f64 {
    i.det()
}

pub fn is_singular(i: &QfiMatrix) -> bool {
    i.is_singular()
}

/// Two-parameter bound on the variance of `target`:
/// `I_ββ / det`, or `+∞` when the matrix is singular.
pub fn crb_variance(i: &QfiMatrix, target: ParameterId) -> f64 {
    if i.is_singular() {
        return f64::INFINITY;
    }
    let other = match target {
        ParameterId::Omega => i.i_gg,
        ParameterId::Coupling => i.i_oo,
    };
    other / i.det()
}

/// Inverse QFIM, the matrix lower bound on the estimator covariance, in
/// `(ω, g)` order; `None` when the matrix is singular.
pub fn crb_covariance_bound(i: &QfiMatrix) -> Option<[[f64; 2]; 2]> {
    if i.is_singular() {
        return None;
    }
    let d = i.det();
    Some([[i.i_gg / d, -i.i_og / d], [-i.i_og / d, i.i_oo / d]])
}

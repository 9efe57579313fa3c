use faer::Mat;
use num_complex::Complex64;

use super::QfiMatrix;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, inner, norm, ComplexMatrix, HermitianEigen};

/// A density matrix held in its eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState {
    pub eigen: HermitianEigen,
    pub rank_tolerance: f64,
}

impl SpectralState {
    /// Diagonalises `rho`, checking it is a density matrix and clipping the
    /// eigenvalues to `[0, 1]`.
    pub fn from_density(rho: &ComplexMatrix) -> Result<Self> {
        Self::from_density_with(rho, &Tolerances::default())
    }

    pub fn from_density_with(rho: &ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let mut eigen = hermitian_eig(rho)?;
        Self::check_spectrum(&eigen.values, tol)?;
        for v in &mut eigen.values {
            *v = v.clamp(0.0, 1.0);
        }
        Ok(Self {
            eigen,
            rank_tolerance: tol.rank_cutoff,
        })
    }

    fn check_spectrum(values: &[f64], tol: &Tolerances) -> Result<()> {
        if let Some(min) = values.iter().copied().reduce(f64::min) {
            if min < -tol.negative_eigenvalue {
                return Err(Error::NotDensityMatrix(format!(
                    "eigenvalue {min:.3e} is negative"
                )));
            }
        }
        let trace: f64 = values.iter().sum();
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::NotDensityMatrix(format!("trace {trace} != 1")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.eigen.dim()
    }

    /// Number of eigenvalues above half the pair cutoff.
    pub fn support_rank(&self) -> usize {
        self.eigen
            .values
            .iter()
            .filter(|&&l| l > 0.5 * self.rank_tolerance)
            .count()
    }
}

/// Pure-state QFI entry `4 Re[⟨∂_a ψ|∂_b ψ⟩ - ⟨∂_a ψ|ψ⟩⟨ψ|∂_b ψ⟩]`.
pub fn qfim_pure(psi: &[Complex64], dpsi_a: &[Complex64], dpsi_b: &[Complex64]) -> Result<f64> {
    for d in [dpsi_a, dpsi_b] {
        if d.len() != psi.len() {
            return Err(Error::DimensionMismatch {
                expected: psi.len(),
                got: d.len(),
            });
        }
    }
    let tol = Tolerances::default().normalization;
    let n = norm(psi);
    if (n - 1.0).abs() > tol {
        return Err(Error::Unnormalized { norm: n, tolerance: tol });
    }
    let value = inner(dpsi_a, dpsi_b) - inner(dpsi_a, psi) * inner(psi, dpsi_b);
    Ok(4.0 * value.re)
}

/// Full pure-state QFIM from the ω and g derivatives of `psi`.
pub fn qfim_pure_matrix(
    psi: &[Complex64],
    d_omega: &[Complex64],
    d_g: &[Complex64],
) -> Result<QfiMatrix> {
    QfiMatrix::new(
        qfim_pure(psi, d_omega, d_omega)?,
        qfim_pure(psi, d_omega, d_g)?,
        qfim_pure(psi, d_g, d_g)?,
    )
}

/// Mixed-state QFI entry
/// `Σ_{λi+λj > cutoff} 2 Re[⟨i|∂_a ρ|j⟩⟨j|∂_b ρ|i⟩] / (λi + λj)`.
///
/// Only rows of `V^H ∂ρ V` inside the support are formed; a pair with both
/// indices outside it always falls below the cutoff.
pub fn qfim_mixed(state: &SpectralState, drho_a: &ComplexMatrix, drho_b: &ComplexMatrix) -> Result<f64> {
    let d = state.dim();
    let tol = Tolerances::default();
    for m in [drho_a, drho_b] {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: m.rows(),
            });
        }
        m.check_hermitian(tol.hermitian_rel)?;
    }

    let lambda = &state.eigen.values;
    let cutoff = state.rank_tolerance;
    let support: Vec<usize> = (0..d).filter(|&i| lambda[i] > 0.5 * cutoff).collect();
    let mut in_support = vec![false; d];
    for &i in &support {
        in_support[i] = true;
    }

    let v = state.eigen.vectors.to_faer();
    let vs = Mat::from_fn(d, support.len(), |i, c| v[(i, support[c])]);
    let rows = |m: &ComplexMatrix| -> Mat<Complex64> { vs.adjoint() * m.to_faer() * &v };
    let a = rows(drho_a);
    let b = if std::ptr::eq(drho_a, drho_b) {
        a.clone()
    } else {
        rows(drho_b)
    };

    let mut total = 0.0;
    for (c, &i) in support.iter().enumerate() {
        for j in 0..d {
            let den = lambda[i] + lambda[j];
            if den <= cutoff {
                continue;
            }
            let t = 2.0 * (a[(c, j)] * b[(c, j)].conj()).re / den;
            total += if in_support[j] { t } else { 2.0 * t };
        }
    }
    Ok(total)
}

use faer::{Mat, Side};
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Eigenpairs of a Hermitian matrix: ascending eigenvalues, eigenvectors as
/// orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V diag(values) V^H`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * v[(j, k)].conj() * self.values[k])
                .sum()
        })
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come back ascending; every eigenvector has its first
/// non-negligible component real and positive so repeated calls agree bit for
/// bit.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigen> {
    a.check_hermitian(Tolerances::default().hermitian_rel)?;
    let n = a.rows();
    if n == 0 {
        return Ok(HermitianEigen {
            values: vec![],
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }
    let evd = a
        .to_faer()
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::EigenFailure)?;
    let s = evd.S().column_vector();
    let u = evd.U();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].re.total_cmp(&s[j].re));

    let values = order.iter().map(|&k| s[k].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let column: Vec<Complex64> = (0..n).map(|i| u[(i, k)]).collect();
        let phase = canonical_phase(&column);
        for (i, z) in column.into_iter().enumerate() {
            vectors[(i, col)] = z * phase;
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Unit phase that rotates the first non-negligible component onto the
/// positive real axis.
pub(crate) fn canonical_phase(v: &[Complex64]) -> Complex64 {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let first = v
        .iter()
        .find(|z| z.norm() > 1e-12 * scale)
        .expect("nonzero vector has a component above threshold");
    first.conj() / first.norm()
}

/// Eigenpairs of a real symmetric matrix (column-major `Mat`), ascending.
#[derive(Debug, Clone)]
pub(crate) struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Mat<f64>,
}

pub(crate) fn symmetric_eig(a: &Mat<f64>) -> Result<SymmetricEigen> {
    let n = a.nrows();
    let evd = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::EigenFailure)?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].total_cmp(&s[j]));
    let values = order.iter().map(|&k| s[k]).collect();
    let vectors = Mat::from_fn(n, n, |i, c| {
        let k = order[c];
        // sign: first non-negligible entry positive
        let scale = (0..n).map(|r| u[(r, k)].abs()).fold(0.0, f64::max);
        let lead = (0..n)
            .map(|r| u[(r, k)])
            .find(|x| x.abs() > 1e-12 * scale)
            .unwrap_or(1.0);
        u[(i, k)] * lead.signum()
    });
    Ok(SymmetricEigen { values, vectors })
}

use std::ops::{Index, IndexMut};

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_row_major(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_row_major(
            rows,
            cols,
            data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_ij |A_ij - conj(A_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn check_hermitian(&self, rel: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let allowed = rel * self.max_abs();
        let asymmetry = self.hermitian_defect();
        if asymmetry > allowed {
            return Err(Error::NotHermitian { asymmetry, allowed });
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        Ok(Self::from_faer(&(self.to_faer() * rhs.to_faer())))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// `self += weight * (u v^H)`.
    pub fn add_outer(&mut self, weight: f64, u: &[Complex64], v: &[Complex64]) {
        debug_assert_eq!(u.len(), self.rows);
        debug_assert_eq!(v.len(), self.cols);
        for (i, ui) in u.iter().enumerate() {
            let wu = ui * weight;
            if wu == Complex64::new(0.0, 0.0) {
                continue;
            }
            let row = &mut self.data[i * self.cols..(i + 1) * self.cols];
            for (r, vj) in row.iter_mut().zip(v) {
                *r += wu * vj.conj();
            }
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn to_faer(&self) -> Mat<Complex64> {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)])
    }

    pub(crate) fn from_faer(m: &Mat<Complex64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product: `kron(A, B)[i*rB + k][j*cB + l] = A[i][j] * B[k][l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (rb, cb) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * rb, a.cols() * cb, |r, c| {
        a[(r / rb, c / cb)] * b[(r % rb, c % cb)]
    })
}

/// Kronecker product of two vectors.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// `<a|b>` with the first argument conjugated.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn to_complex(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kron_identities() {
        let id2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&id2, &id2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_diagonal_product() {
        let a = ComplexMatrix::diagonal(&[c(2.0), c(3.0)]);
        let b = ComplexMatrix::diagonal(&[c(5.0), c(7.0)]);
        let expected = ComplexMatrix::diagonal(&[c(10.0), c(14.0), c(15.0), c(21.0)]);
        assert_eq!(kron(&a, &b), expected);
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(ComplexMatrix::from_row_major(2, 2, vec![c(1.0); 3]).is_err());
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.check_hermitian(1e-12), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn add_outer_builds_projector() {
        let v = vec![c(0.6), Complex64::new(0.0, 0.8)];
        let mut p = ComplexMatrix::zeros(2, 2);
        p.add_outer(1.0, &v, &v);
        assert!((p.trace().re - 1.0).abs() < 1e-15);
        assert!(p.hermitian_defect() < 1e-15);
        assert!((p[(0, 1)] - Complex64::new(0.0, -0.48)).norm() < 1e-15);
    }
}

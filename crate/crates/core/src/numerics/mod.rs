//! Dense complex linear algebra and quadrature used across the crate.
//!
//! Heavy lifting (Hermitian eigendecomposition, matrix products) is delegated
//! to `faer`; this module fixes the conventions the rest of the crate relies
//! on: ascending eigenvalues, canonical eigenvector phases, row-major storage.

mod eigen;
mod matrix;
mod quadrature;
mod tridiagonal;

pub use eigen::{hermitian_eig, HermitianEigen};
pub(crate) use eigen::symmetric_eig;
pub use matrix::{inner, kron, kron_vec, norm, to_complex, ComplexMatrix};
pub use quadrature::{gauss_hermite, QuadratureRule, MAX_GAUSS_HERMITE_ORDER};
pub use tridiagonal::SymTridiagonal;

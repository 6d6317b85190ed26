//! Dense complex linear algebra used by every other module.

mod eig;
mod jacobi;
mod lu;
mod matrix;
pub mod serde_text;
mod text;

use serde::{Deserialize, Serialize};

pub use eig::{general_eig, EigenDecomposition};
pub use jacobi::{condition_number, hermitian_eig, positive_sqrt, singular_values, HermitianEigen};
pub use lu::inverse;
pub use matrix::{frobenius_residual, scalar_product, vector_residual, ComplexMatrix, ComplexVector, C64};
pub use text::{format_complex, parse_complex};

pub use matrix::{I, ONE, ZERO};

/// Numerical tolerances, all relative to the scale of the matrix at hand.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Eigen-equation and reconstruction residuals.
    pub eig: f64,
    /// Hermiticity check on inputs to the Hermitian solver.
    pub sym: f64,
    /// Minimum eigenvalue separation; also the exceptional-point band.
    pub gap: f64,
    /// Smallest eigenvalue accepted as positive.
    pub pd: f64,
    pub cond_max: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { eig: 1e-10, sym: 1e-12, gap: 1e-8, pd: 1e-12, cond_max: 1e12 }
    }
}

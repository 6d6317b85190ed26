use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    Symmetry { defect: f64 },

    #[error("{routine} did not converge after {iterations} iterations")]
    Convergence { routine: &'static str, iterations: usize },

    #[error("eigenvalues {first} and {second} coincide within tolerance (gap {gap:.3e})")]
    DegenerateSpectrum { first: String, second: String, gap: f64 },

    #[error("matrix is singular to working precision{}", cond.map(|c| format!(" (condition estimate {c:.3e})")).unwrap_or_default())]
    SingularMatrix { cond: Option<f64> },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("eigenbasis is ill-conditioned (cond {cond:.3e} exceeds {limit:.3e})")]
    IllConditionedBasis { cond: f64, limit: f64 },

    #[error("normalization error: {0}")]
    Normalization(String),

    #[error("antilinear operator does not fix basis vector {index} (residual {residual:.3e})")]
    NotFixed { index: usize, residual: f64 },

    #[error("pair {index} is not an eigenpair of the operator (residual {residual:.3e})")]
    NotEigenpair { index: usize, residual: f64 },

    #[error("construction contract `{relation}` violated (residual {residual:.3e})")]
    Construction { relation: String, residual: f64 },

    #[error("degenerate parameters: {0}")]
    DegenerateParam(String),

    #[error("parameters are not in the broken regime (discriminant {discriminant:.3e})")]
    NotBrokenRegime { discriminant: f64 },

    #[error("regime error: {0}")]
    Regime(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse `{input}` as a complex number")]
    Parse { input: String },
}

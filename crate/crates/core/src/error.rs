use thiserror::Error;

use crate::poly::ComplexScalar;
use crate::sextic::ConstraintReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("expected a polynomial of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("polynomial must have degree at least 1")]
    EmptyPolynomial,

    #[error("root multisets have different sizes ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("exhaustive matching supports at most {max} roots, got {found}")]
    TooManyRoots { max: usize, found: usize },

    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "coefficients are not in the family: |residual_1| = {:.3e}, |residual_2| = {:.3e}",
        .0.residual_1.norm(),
        .0.residual_2.norm()
    )]
    ConstraintsUnsatisfied(Box<ConstraintReport>),

    #[error("recovered quantity {what} is inconsistent: disagreement {disagreement:.3e} exceeds {limit:.3e}")]
    Inconsistent {
        what: &'static str,
        disagreement: f64,
        limit: f64,
    },

    #[error("root iteration did not converge after {iterations} iterations (max residual {:.3e})", max_residual(.residuals))]
    NoConvergence {
        iterations: usize,
        best: Vec<ComplexScalar>,
        residuals: Vec<f64>,
    },
}

fn max_residual(residuals: &[f64]) -> f64 {
    residuals.iter().copied().fold(0.0, f64::max)
}

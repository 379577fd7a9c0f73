use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("Jacobi identity fails: {0}")]
    Jacobi(String),
    #[error("J does not square to -1")]
    NotComplex,
    #[error("the 2-form is degenerate")]
    Degenerate,
    #[error("forms with coefficient functions need the general differential")]
    FunctionCoefficients,
    #[error("subbundle is not isotropic: {0}")]
    NotIsotropic(String),
    #[error("subbundle is not involutive: {0}")]
    NotInvolutive(String),
    #[error("not a generalized complex structure at these parameter values (L meets its conjugate)")]
    NotSeparated,
    #[error("{0} lies outside the expected span")]
    NotInSpan(String),
    #[error("internal consistency failure: {0} derivative terms survive")]
    DerivativesSurvive(usize),
    #[error("parameter '{0}' is unbound")]
    UnboundParameter(String),
    #[error("stratification refused: {count} parameters (limit 8); generic rank {generic_rank}")]
    TooManyParameters { count: usize, generic_rank: usize },
    #[error("nonlinear constraints remain: {0}")]
    NonlinearResidual(String),
    #[error("gauge direction not expressible in solution coordinates")]
    GaugeNotExpressible,
}

impl Error {
    /// True for malformed input, false for mathematical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Input(_)
                | Error::UnboundParameter(_)
                | Error::Scalar(ScalarError::NonParameterBinding(_))
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Exact coefficient arithmetic.
//!
//! Everything downstream is expanded in [`PolyScalar`]: polynomials with
//! Gaussian-rational coefficients in deformation parameters, coefficient
//! functions, and first derivatives of coefficient functions along frame
//! vectors.

mod expr;
mod gaussian;
mod linsolve;
mod poly;
mod symbol;

use thiserror::Error;

pub use expr::{parse_constant, parse_linear, ExprError, LinearCombination};
pub use gaussian::GaussianRational;
pub use linsolve::{solve_linear, LinearSolution};
pub use poly::{Monomial, PolyScalar};
pub use symbol::{DerivationSymbol, Generator, Symbol, SymbolKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cannot differentiate parameter '{0}'")]
    DerivativeOfParameter(String),
    #[error("second derivative required: cannot differentiate {0}")]
    SecondDerivative(String),
    #[error("only parameters can be bound to values, got '{0}'")]
    NonParameterBinding(String),
    #[error("empty solution set: the linear system is inconsistent")]
    Inconsistent,
}

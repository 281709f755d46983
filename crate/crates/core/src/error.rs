use thiserror::Error;

/// Failures raised by the constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("polynomial is not invariant under x -> -(x+alpha+beta+1)")]
    NotInLambdaRing,

    #[error("parameter violation: {0}")]
    ParameterViolation(String),

    #[error("the zero operator has no order window")]
    EmptyOperator,

    #[error("Casorati determinant vanishes at n = {n}")]
    DegenerateCasorati { n: i64 },

    #[error("polynomial division left a nonzero remainder")]
    NonExactDivision,

    #[error("expected a polynomial: {0}")]
    NotPolynomial(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

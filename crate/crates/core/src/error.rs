use thiserror::Error;

use crate::exactalg::Rat;

/// Everything that can go wrong while building models or evaluating invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("c*r = {0} is not an integer")]
    NonIntegralProduct(Rat),

    #[error("slope parameter c = {c} outside admissible range (0, {eps}]{}", if *.saturates { "" } else { " (c = eps needs saturation)" })]
    SlopeParameterOutOfRange {
        c: Box<Rat>,
        eps: Box<Rat>,
        saturates: bool,
    },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("mismatched ambient data: {0}")]
    AmbientMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("inconsistent samples: {0}")]
    InconsistentSamples(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

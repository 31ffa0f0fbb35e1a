use thiserror::Error;

/// Errors raised by evaluation, quadrature and algebraic operations.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("divergent index: {0}")]
    DivergentIndex(String),
    #[error("budget of {budget} terms exhausted; estimated error {reached} > tolerance {wanted}")]
    BudgetExceeded {
        budget: u64,
        reached: String,
        wanted: String,
    },
    #[error("quadrature failed to converge: {0}")]
    QuadratureFailure(String),
    #[error("iterated-integral bounds mismatch: {0}")]
    BoundMismatch(String),
    #[error("argument is not a 4th root of unity: {0}")]
    ArgumentNotUnit(String),
    #[error("word is not convergent: {0}")]
    NotConvergent(String),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("series order exceeded: requested {requested}, available {available}")]
    OrderExceeded { requested: usize, available: usize },
    #[error("unknown series name: {0}")]
    UnknownName(String),
    #[error("divergent combination: {0}")]
    DivergentCombination(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

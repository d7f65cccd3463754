use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a nonnegative integer, got {0}")]
    Negative(BigInt),

    #[error("expected a positive integer, got 0")]
    Zero,

    /// The cofactor left after trial division could not be certified prime.
    #[error("{value} has a cofactor {cofactor} that could not be factored with trial bound {bound}")]
    Unfactored {
        value: BigInt,
        cofactor: BigInt,
        bound: u64,
    },

    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: BigInt, m: BigInt },

    #[error("Jacobi symbol needs an odd positive modulus, got {0}")]
    BadJacobiModulus(BigInt),

    #[error("{0} is not square-free")]
    NotSquarefree(BigInt),

    #[error("radicand must be a square-free integer >= 2, got {0}")]
    BadRadicand(BigInt),

    #[error("operands live in different fields (d = {0} and d = {1})")]
    MixedFields(BigInt, BigInt),

    #[error("{0} is not a unit")]
    NotAUnit(String),

    #[error("zero element has no ideal basis")]
    ZeroElement,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no canonical start found within {0} candidates")]
    PhiNotFound(u64),

    /// The n0 congruence has no solution, so the pair generates no radicand.
    #[error("pair (y = {y}, x = {x}) admits no element of norm {mu}")]
    EmptyProgression { mu: BigInt, y: BigInt, x: BigInt },

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("cannot parse {0:?}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by finite search or factoring budgets rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::Unfactored { .. } | Error::PhiNotFound(_) | Error::BudgetExhausted(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    Zero,
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("{0} is a perfect square, so Q(√{0}) is not a quadratic field")]
    SquareField(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides {modulus}")]
    PrimeDividesLevel { p: u64, modulus: u64 },
    #[error("3 divides {0}; reduce the twist first")]
    DivisibleByThree(i64),
    #[error("operator needs more precision: input truncated at q^{have}, output would be empty")]
    InsufficientTruncation { have: usize },
    #[error("comparison to q^{bound} needs both series to that depth (have q^{have})")]
    ComparisonBeyondTruncation { bound: usize, have: usize },
    #[error("expected weight 2·k = {expected}, got {got}")]
    WrongWeight { expected: u32, got: u32 },
    #[error("invalid form context: {0}")]
    InvalidContext(String),
    #[error("invalid quadratic form: {0}")]
    InvalidForm(&'static str),
    #[error("elements live in different fields Q(√{0}) and Q(√{1})")]
    FieldMismatch(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("sieve needs {requested_mb} MiB, limit is {limit_mb} MiB (set CUBEFERMAT_MEM_MB)")]
    MemoryBudget { requested_mb: u64, limit_mb: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

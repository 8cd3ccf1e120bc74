use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no zero-divisors: {n} is prime")]
    NoZeroDivisors { n: u64 },

    #[error("graph has no edges: Z_{n} has a single non-zero zero-divisor")]
    NoEdges { n: u64 },

    #[error("invalid field: {p} is not a supported prime (primes up to 251)")]
    InvalidField { p: u64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("enumeration budget exceeded: {required} codewords needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("zero-dimensional code has no nonzero codeword")]
    ZeroDimensional,

    #[error("unavailable: {0}")]
    Unavailable(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// True for the inputs the CLI reports as a degenerate graph rather than bad input.
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Error::NoZeroDivisors { .. } | Error::NoEdges { .. })
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the domain of the operation (negative square
    /// root, empty gcd, zero polynomial divisor, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter value that makes the construction collapse.
    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    /// Input that violates a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The inverse transform did not divide exactly.
    #[error("not the image of a transform: {0}")]
    NotAnImage(String),

    #[error("no rational root: {0}")]
    NoRationalRoot(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The flip schedule ran out with repeated roots left. The payload lists
    /// the multiplicities of the repeated |x| classes.
    #[error("schedule exhausted after {rounds} rounds; repeated classes {multiplicities:?}")]
    ScheduleExhausted {
        rounds: usize,
        multiplicities: Vec<usize>,
    },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

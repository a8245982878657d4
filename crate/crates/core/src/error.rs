use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the kernel. No IEEE specials exist in this
/// representation, so anything that would produce one is an `Err`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("range error in {op}: {msg}")]
    Range { op: &'static str, msg: String },

    #[error("exponent overflow in {op}")]
    ExponentOverflow { op: &'static str },

    #[error("{method} did not converge after {iterations} iterations; eval trail: {trail:?}")]
    Convergence {
        method: &'static str,
        iterations: usize,
        /// (iteration, requested error exponent) pairs leading up to the failure.
        trail: Vec<(u32, u32)>,
    },

    #[error("degenerate secant step: equal function values at working precision")]
    DegenerateSecant,

    #[error("missing derivative callables: need {need}, have {have}")]
    MissingDerivatives { need: usize, have: usize },

    #[error("meter report requested from an empty meter")]
    EmptyMeterReport,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("series operand is not a unit: constant term is zero")]
    NonUnit,

    #[error("series normalization error in {op}: expected constant term {expected}")]
    Normalization { op: &'static str, expected: &'static str },

    #[error("zero series has no defined power for m = 0")]
    ZeroSeriesPow,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }
    pub fn range(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Range { op, msg: msg.into() }
    }
}

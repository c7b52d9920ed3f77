use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("bad reduction at {prime}: {reason}")]
    BadReduction { prime: u64, reason: String },

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("evaluation at a pole")]
    Pole,

    #[error("additive reduction at {prime} is not supported")]
    UnsupportedReduction { prime: u64 },

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("no rational cyclic 5-kernel")]
    NoRationalKernel,

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("degenerate abscissa: preimage polynomial drops degree")]
    DegenerateAbscissa,

    #[error("radicand {0} is a rational square; the field is not quadratic")]
    FieldCollapse(String),

    #[error("prime {prime} is ramified or of bad reduction for this polynomial")]
    RamifiedOrBadPrime { prime: u64 },

    #[error("protocol violation at {prime}: factor degrees {profile:?}")]
    ProtocolViolation { prime: u64, profile: Vec<usize> },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("out of budget: {0}")]
    OutOfBudget(String),

    #[error("no singular point at {prime}: good reduction")]
    NoSingularPoint { prime: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

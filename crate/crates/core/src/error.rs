use thiserror::Error;

/// Errors produced by every layer of the crate.
///
/// Variants fall into three families that the CLI maps to distinct exit
/// codes: validation problems, enumeration caps, and I/O.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("{what} needs {required}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        required: String,
        cap: u64,
    },
    #[error("operands belong to different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element encoding {value} is outside a field of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("degree {small} does not divide degree {big}")]
    Divisibility { small: u32, big: u32 },
    #[error("no field embedding found from order {small} into order {big}")]
    EmbeddingNotFound { small: u64, big: u64 },
    #[error("parity-check matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported format: {0:?}")]
    UnsupportedFormat(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub(crate) fn cap(what: &'static str, required: impl ToString, cap: u64) -> Self {
        Error::CapExceeded {
            what,
            required: required.to_string(),
            cap,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

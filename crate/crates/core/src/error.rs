use thiserror::Error;

/// Errors raised by the library. Variants map onto the CLI exit-code contract
/// through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("field GF({p}^{n}) exceeds the supported table size")]
    FieldTooLarge { p: u32, n: u32 },

    #[error("form factors over GF({p}^{n})")]
    Reducible { p: u32, n: u32 },

    #[error("sampling exhausted: {0}")]
    SamplingExhausted(String),

    #[error("unsupported curve class: {0}")]
    UnsupportedClass(String),

    #[error("curve is strange with center {center}; the dual map is the projection from it")]
    StrangeCurve { center: String },

    #[error("inseparable projection: {0}")]
    InseparableProjection(String),

    #[error("inseparable cover: {0}")]
    InseparableCover(String),

    #[error("line contains the image of the parametrization")]
    LineContainsImage,

    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// 0 pass, 1 input error, 2 mathematical-consistency violation,
    /// 3 inconclusive/refused.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Consistency(_) => 2,
            Error::Refused(_) | Error::SamplingExhausted(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

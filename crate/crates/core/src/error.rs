use thiserror::Error;

/// Literal or expression syntax error; `offset` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} (at offset {offset})")]
pub struct ParseError {
    pub message: String,
    pub offset: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, offset: usize) -> ParseError {
        ParseError {
            message: message.into(),
            offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("set is not contained in the domain carrier: {0}")]
    NotInDomain(String),

    #[error("point {0} lies outside the domain")]
    OutsideDomain(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("certificate `{certificate}` failed at k = {k}: {detail}")]
    CertificateFailed {
        certificate: String,
        k: u64,
        detail: String,
    },

    #[error("contradictory certificates: {0}")]
    CertificateConflict(String),

    #[error("norm bound violated at k = {k}: ess sup {norm} > declared {bound}")]
    NormBound { k: u64, norm: String, bound: String },

    #[error("unsupported oracle: {0}")]
    UnsupportedOracle(String),

    #[error("oracle inconsistency: {0}")]
    OracleInconsistency(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

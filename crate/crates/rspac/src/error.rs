//! Crate-wide error type.

/// Errors reported by codec construction and the framing/config layers.
///
/// Decoding *failures* (an RS word that cannot be corrected, a Fano search
/// that ran out of budget) are ordinary values, not errors; see
/// [`crate::rs::RsDecodeOutcome`] and [`crate::pac::FanoResult`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero in GF(256)")]
    DivisionByZero,
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid rate profile: {0}")]
    InvalidProfile(String),
    #[error("invalid connection polynomial: {0}")]
    InvalidConnection(String),
    #[error("demapper accessed out of order: {0}")]
    OutOfOrder(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised across the library. `Display` yields the short stable token
/// used in CLI diagnostics and exit-code mapping.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Dimension mismatch (non-square input, inner dimensions disagree, ...).
    #[error("shape")]
    Shape,
    /// Input exceeds an enumeration or brute-force budget.
    #[error("too-large")]
    TooLarge,
    /// Operation is only defined on all-finite matrices.
    #[error("requires-finite")]
    RequiresFinite,
    /// Operation is only defined on tropical totally positive matrices.
    #[error("not-tp")]
    NotTp,
    /// No path between the requested source and target.
    #[error("disconnected")]
    Disconnected,
    /// The graph contains a cycle.
    #[error("cyclic")]
    Cyclic,
    /// The arc sequence is not a valid source-to-target path.
    #[error("not-a-path")]
    NotAPath,
    /// The zero series has no sign.
    #[error("zero-series")]
    ZeroSeries,
    /// An index is out of range for the ambient dimension.
    #[error("bad-index")]
    BadIndex,
    /// A word and its parameter vector have different lengths.
    #[error("length-mismatch")]
    LengthMismatch,
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

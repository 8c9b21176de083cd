//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Exact elimination ran out of nonzero pivots.
    #[error("matrix is singular")]
    SingularMatrix,

    /// A symmetric matrix (or an xy-symmetric functional) was required.
    #[error("not symmetric: {0}")]
    NotSymmetric(String),

    /// A moment was requested that the functional cannot produce, e.g. a
    /// custom moment table was exhausted.
    #[error("moment ({h},{k}) unavailable: {detail}")]
    MomentUnavailable { h: u32, k: u32, detail: String },

    /// A Christoffel modification or pushforward would have zero or negative
    /// total mass, so the result is not a weight on the support.
    #[error("modified functional has non-positive mass")]
    NonPositiveMass,

    /// The moment matrix of the named functional is singular, or a Gram
    /// matrix fails exact positive-definiteness, at the given degree.
    #[error("`{context}` is not quasi-definite at degree {degree}")]
    NotQuasiDefinite { degree: usize, context: String },

    /// A zip-split family does not match its independently built MOPS, or an
    /// entry fails to carry the symmetry factor it must carry.
    #[error("quadratic decomposition mismatch: {0}")]
    DecompositionMismatch(String),

    /// The two families passed to the connection-matrix computation are not
    /// related by the claimed Christoffel modification.
    #[error("not a Christoffel pair: {0}")]
    NotChristoffelPair(String),

    /// A recurrence-coefficient sequence or polynomial family was not built
    /// deep enough for the requested index.
    #[error("insufficient depth for {what}: need {needed}, have {have}")]
    InsufficientDepth {
        what: String,
        needed: usize,
        have: usize,
    },

    /// An identity that must hold by construction failed exact verification.
    #[error("identity violated: {0}")]
    IdentityViolated(String),

    /// A parameter is outside its admissible range (e.g. a ball exponent
    /// `mu <= -1`), or an input is malformed.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

use thiserror::Error;

/// Errors produced by the library.
///
/// `InternalAssertion` signals an inconsistency between two independent
/// computations of the same quantity (a bug or malformed input table), as
/// opposed to an invalid argument supplied by the caller.
#[derive(Debug, Error)]
pub enum CchError {
    #[error("iterate multiplicity must be >= 1")]
    InvalidIterate,

    #[error("elliptic orbit `{0}` has an exact rotation number; floors of integer multiples are ill-posed")]
    IllPosedElliptic(String),

    #[error("orbit `{name}`: {reason}")]
    InvalidOrbit { name: String, reason: String },

    #[error("orbit set: {0}")]
    InvalidOrbitSet(String),

    #[error("free homotopy query ({orbit}, {k}) outside the declared table domain")]
    HomotopyOutOfDomain { orbit: String, k: u32 },

    #[error("unknown orbit id {0}")]
    UnknownOrbit(usize),

    #[error("only contact 3-manifolds are supported (n = 2), got n = {0}")]
    UnsupportedDimension(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cover bookkeeping: {0}")]
    InvalidCover(String),

    #[error("moduli record: {0}")]
    InvalidModuli(String),

    #[error("generator lookup failed for ({orbit}, {k}): {reason}")]
    GeneratorMissing { orbit: String, k: u32, reason: String },

    #[error("differential does not square to zero")]
    NotAComplex,

    #[error("action cap must be finite for this operation")]
    InfiniteActionCap,

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
}

pub type Result<T> = std::result::Result<T, CchError>;

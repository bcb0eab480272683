use thiserror::Error;

/// Errors raised by polynomial, map, and verification operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable registry mismatch")]
    RegistryMismatch,

    #[error("unknown variable id {0}")]
    UnknownVariable(usize),

    #[error("sphere blocks overlap at variable id {0}")]
    OverlappingBlocks(usize),

    #[error("no value assigned to variable id {0}")]
    MissingAssignment(usize),

    #[error("variety mismatch: expected {expected}, found {found}")]
    VarietyMismatch { expected: String, found: String },

    #[error("denominator vanishes identically on {0}")]
    ZeroDenominator(String),

    #[error("denominator vanishes at the point (excluded locus: {0})")]
    DenominatorZeroAtPoint(String),

    #[error("point does not lie on {variety}: relation {relation} evaluates to {value}")]
    NotOnVariety {
        variety: String,
        relation: usize,
        value: String,
    },

    #[error("image leaves the codomain {variety}: relation {relation} evaluates to {value}")]
    CodomainViolation {
        variety: String,
        relation: usize,
        value: String,
    },

    #[error("no exact sampler registered for {0}")]
    NoSampler(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown target `{0}`")]
    UnknownTarget(String),

    #[error("matrix is singular")]
    Singular,

    #[error("winding number did not converge: {0}")]
    NonConvergent(String),

    #[error("fiber point {0} does not map to the claimed value")]
    FiberMismatch(usize),

    #[error("invalid J-map input: {0}")]
    InvalidJMapInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

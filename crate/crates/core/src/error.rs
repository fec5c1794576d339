use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate length mismatch: expected {expected}, got {got}")]
    CoordinateLength { expected: usize, got: usize },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("incompatible operands: {0}")]
    Mismatch(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("coefficient not in ring: {0}")]
    Coefficient(String),

    #[error("module has {size} elements, exceeding the cap of {cap}")]
    SizeCap { size: String, cap: u64 },

    #[error("subgroup is not closed under the ring action")]
    NotSubmodule,

    #[error("generator images do not define a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("map is not surjective")]
    NotSurjective,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency violation: {0}")]
    Internal(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by circuit construction, simulation, and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("bit string length must be between 1 and 64, got {0}")]
    BadLength(usize),

    #[error("bit string has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid character {found:?} in bit string")]
    BadBitChar { found: char },

    #[error("target qubit {target} is also a control")]
    TargetInControls { target: usize },

    #[error("duplicate qubit {qubit} in {context}")]
    DuplicateQubit { qubit: usize, context: &'static str },

    #[error("transform support must not be empty")]
    EmptySupport,

    /// Two transform layers in direct succession make the transform count
    /// ambiguous, so they are never merged silently.
    #[error("adjacent transform layers are not merged; declare them as a single transform layer")]
    AdjacentTransforms,

    #[error("operation requires a {expected}-transform circuit, found k={found}")]
    WrongArity { expected: usize, found: usize },

    #[error("verification supports at most k=2 transform layers, found k={found}")]
    TooManyTransforms { found: usize },

    #[error("{n} qubits exceeds the dense simulator capacity of {max}")]
    Capacity { n: usize, max: usize },

    #[error("path enumeration over 2^{a} terms exceeds the 2^{max} bound")]
    EnumerationTooLarge { a: usize, max: usize },

    #[error("outcome {outcome} is not reachable from {base} through this transform")]
    OutsideCoset { base: String, outcome: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

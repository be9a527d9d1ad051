use thiserror::Error;

/// Errors raised by graph construction, operator evaluation and norm computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{family} graph is not defined for n = {n}")]
    UnsupportedSize { family: &'static str, n: usize },
    #[error("{what}: n = {n} exceeds cap {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },
    #[error("length mismatch: expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix is not the delta response of a connected graph")]
    InconsistentMatrix,
    #[error("invalid exponent {p}: {reason}")]
    InvalidExponent { p: String, reason: &'static str },
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

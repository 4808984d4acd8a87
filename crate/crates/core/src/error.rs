//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by the engine.
///
/// `Internal` is reserved for broken invariants of the multiplication rule
/// itself (an illegal prime, a reading word of forbidden weight, a descent
/// class with non-constant coefficients). It signals a bug, never bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid basis index: {0}")]
    InvalidIndex(String),

    #[error("rank must be at least {min}, got {got}")]
    InvalidRank { min: usize, got: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("rank {requested} exceeds the configured cap {cap}")]
    RankCap { requested: usize, cap: usize },

    #[error("integer overflow in coefficient arithmetic")]
    Overflow,

    #[error("malformed generator subset: {0}")]
    MalformedSubset(String),

    #[error("vector is not in the descent algebra: {0}")]
    NotInDescentAlgebra(String),

    #[error("group mismatch: operands belong to different groups")]
    GroupMismatch,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::luna::Violation;

/// Errors raised by structural problems or unmet preconditions.
///
/// Axiom failures of a well-formed datum are not errors; they are reported
/// as [`Violation`]s by [`crate::luna::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("inadmissible rank {rank} for Dynkin type {ty}")]
    InadmissibleRank { ty: char, rank: usize },

    #[error("unknown Dynkin type `{0}`")]
    UnknownType(String),

    #[error("vector is not in the rational span of the simple roots")]
    OutsideRootSpan,

    #[error("vector is not in the rational span of the lattice")]
    OutsideSpan,

    #[error("lattice is not contained in the ambient lattice")]
    NotSublattice,

    #[error("zero vector does not span a ray")]
    ZeroVector,

    #[error("vector is not a spherical root of the group")]
    NotSphericalRoot,

    #[error("simple root index {0} out of range")]
    RootIndex(usize),

    #[error("unknown color `{0}`")]
    UnknownColor(String),

    #[error("pair is not a colored subspace")]
    NotColored,

    #[error("pair is not distinguished")]
    NotDistinguished,

    #[error("index bound must be at least 1")]
    InvalidBound,

    #[error("data belong to different groups")]
    GroupMismatch,

    #[error("Luna datum violates {} axiom(s): {}", .0.len(), summarize(.0))]
    InvalidDatum(Vec<Violation>),

    #[error("malformed datum: {0}")]
    Malformed(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn summarize(violations: &[Violation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use std::fmt;

use thiserror::Error;

use crate::polyhedra::SmoothnessViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("points span an affine space of dimension {rank}, expected {dim}")]
    DimensionDeficient { rank: usize, dim: usize },

    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,

    #[error("dual polytope has non-integral vertex {0}")]
    NonIntegralDual(String),

    #[error("subspace does not meet the interior of the polytope")]
    DegenerateRestriction,

    #[error("affine hull of the face contains no lattice point")]
    DegenerateFace,

    #[error("Ehrhart computation refused in dimension {dim} (cap {cap}); raise the cap to override")]
    DimensionCap { dim: usize, cap: usize },

    #[error("simplex pivot limit of {0} exceeded")]
    PivotLimit(usize),

    #[error("not a smooth Fano polytope: {0}")]
    NotSmoothFano(SmoothnessViolation),

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("no entry named `{0}`")]
    UnknownEntry(String),
}

/// Malformed polytope file input, with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub reason: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.reason)
    }
}

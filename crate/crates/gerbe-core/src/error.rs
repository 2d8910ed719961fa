use thiserror::Error;

/// Errors reported by the exact-arithmetic layers and the case machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid family/rank combination: {family}_{rank}")]
    InvalidFamilyRank { family: String, rank: usize },

    #[error("node index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("vector is not a root of this system")]
    NotARoot,

    #[error("point lies outside the fundamental alcove")]
    OutsideAlcove,

    #[error("construction self-check failed: {0}")]
    ConstructionCheck(String),

    #[error("e-table inconsistent: coboundary value at triple {0:?} is not in the coroot lattice")]
    CoboundaryNotCoroot((usize, usize, usize)),

    #[error("input 3-cochain is not a cocycle")]
    NotACocycle,

    #[error("2-cochain does not solve the cohomological equation at this level")]
    NotASolution,

    #[error("no solution at level {0}")]
    NoSolutionAtLevel(u32),

    #[error("no solvable level found up to the cap k = {0}; this indicates a bug")]
    LevelCapExceeded(u32),

    #[error("class count changed under modulus saturation ({0} vs {1}); this indicates a bug")]
    ClassSaturation(usize, usize),

    #[error("unknown subgroup label {label:?} for {family}_{rank}")]
    UnknownSubgroup {
        label: String,
        family: String,
        rank: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

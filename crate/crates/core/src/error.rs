use thiserror::Error;

use crate::grid::HalfPoint;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid design: {0}")]
    InvalidDesign(String),
    #[error("quarter-turn centre {0} is not at a cell corner or cell centre")]
    InvalidCentre(HalfPoint),
    #[error("rotation direction must be +1 or -1, got {0}")]
    InvalidDirection(i8),
    #[error("isometry does not map cells to cells")]
    NotCellPreserving,
    #[error("lattice side ({0}, {1}) lies on a forbidden line")]
    ForbiddenLine(i64, i64),
    #[error("zero vector does not define a lattice unit")]
    ZeroVector,
    #[error("legs ({m}, {n}) share the factor {g}; no isonemal group has this lattice unit")]
    CommonFactor { m: i64, n: i64, g: i64 },
    #[error("degenerate lattice")]
    DegenerateLattice,
    #[error("level {0} lattice unit cannot be escribed further")]
    LevelTooHigh(u8),
    #[error("level-1 lattice unit cannot be inscribed")]
    LevelTooLow,
    #[error("invalid level-1 seed ({0}, {1}): legs must satisfy M > N >= 1, opposite parity, coprime")]
    InvalidSeed(i64, i64),
    #[error("species {species} cannot be built on seed ({m}, {n})")]
    IncompatibleSpecies { species: String, m: i64, n: i64 },
    #[error("unknown species {0:?}")]
    UnknownSpecies(String),
    #[error("torus side {side} exceeds the bound {max}")]
    TorusTooLarge { side: usize, max: usize },
    #[error("torus side {0} is odd and cannot be halved")]
    OddTorus(usize),
    #[error("inconsistent rotation placement: {0}")]
    InconsistentPlacement(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

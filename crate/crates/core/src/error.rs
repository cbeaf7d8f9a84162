use thiserror::Error;

/// Errors raised while building or querying the combinatorial objects.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid finite type {family}{rank}")]
    InvalidType { family: char, rank: usize },

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("letter index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("not a Coxeter word: {0}")]
    NotCoxeterWord(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("weight difference {0} is not in the root lattice")]
    NotInRootLattice(String),

    #[error("root closure did not terminate after {0} rounds")]
    RootClosureDiverged(usize),

    #[error("empty point set")]
    EmptyPointSet,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

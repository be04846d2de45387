use thiserror::Error;

/// Errors raised by the library. Input problems and violated mathematical
/// preconditions are kept apart so the CLI can map them to exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid graph: {}", .0.join("; "))]
    InvalidGraph(Vec<String>),

    #[error("empty basis set")]
    EmptyBases,

    #[error("no Gale-minimal element with respect to {0}")]
    NoGaleExtremum(usize),

    #[error("invalid necklace: {0}")]
    InvalidNecklace(String),

    #[error("invalid bounded affine permutation: {0}")]
    InvalidPermutation(String),

    #[error("expected {expected} indices, got {got}")]
    WrongCardinality { expected: usize, got: usize },

    #[error("matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },

    #[error("graph is not reduced: {0}")]
    NotReduced(String),

    #[error("graph admits no matching")]
    NoMatchings,

    #[error("face coordinate vanishes at face {0}")]
    ZeroFaceCoordinate(String),

    #[error("necklace minor vanishes at position {0}")]
    ZeroNecklaceMinor(usize),

    #[error("not a Pluecker vector: {0}")]
    NotPluecker(String),

    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),

    #[error("illegal bridge at {0}: the inequality on the permutation fails")]
    IllegalBridge(usize),

    #[error("swivel not applicable at face {0}")]
    SwivelNotApplicable(String),

    #[error("{0}")]
    Precondition(String),
}

impl Error {
    /// True for errors caused by unreadable or structurally broken input.
    pub fn is_malformed(&self) -> bool {
        matches!(self, Error::Malformed(_) | Error::InvalidGraph(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

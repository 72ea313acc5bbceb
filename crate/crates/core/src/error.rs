use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid character {ch:?} at position {position} in word {text:?}")]
    Parse {
        text: String,
        position: usize,
        ch: char,
    },

    #[error("generator {index} is outside an alphabet of rank {rank}")]
    LetterOutOfRange { index: usize, rank: usize },

    #[error("alphabet rank must be in 1..=26, got {0}")]
    BadAlphabet(usize),

    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("ambient rank {ambient} is smaller than the largest generator {needed} used by the subgroup")]
    AmbientRankTooSmall { ambient: usize, needed: usize },

    #[error("invalid core graph: {0}")]
    InvalidGraph(String),

    #[error("malformed graph document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("quotient enumeration exceeded the cap of {cap} graphs ({visited} visited)")]
    EnumerationLimit { visited: usize, cap: usize },

    #[error("{0}")]
    Input(String),

    /// Something that a proved theorem rules out. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

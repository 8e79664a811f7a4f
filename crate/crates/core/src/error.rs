use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree {degree} exceeds the configured maximum degree {max}")]
    DegreeOverflow { degree: usize, max: usize },

    #[error("index {n} is outside the supported range 1..={max}")]
    IndexOutOfRange { n: usize, max: usize },

    #[error("composition parts must be positive integers")]
    ZeroPart,

    #[error("operation requires a nonempty composition")]
    EmptyComposition,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("map {index} is not a derivation: {detail}")]
    NotADerivation { index: usize, detail: String },

    #[error("not a Hasse-Schmidt family: {0}")]
    NotHasseSchmidt(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("word {word} is longer than the truncation length {max_len}")]
    TruncationOverflow { word: String, max_len: usize },

    #[error("invalid generator image: {0}")]
    InvalidGeneratorImage(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

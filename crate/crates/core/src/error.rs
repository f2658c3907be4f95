use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("word does not fit the alphabet (symbol index {index} out of {len})")]
    AlphabetMismatch { index: usize, len: usize },

    #[error("word is not freely reduced")]
    NotFreelyReduced,

    #[error("subgroup generator `{0}` is trivial after free reduction")]
    TrivialGenerator(String),

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("duplicate rule left-hand side `{0}`")]
    DuplicateRule(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("ball radius {have} around the base is smaller than the requested {needed}")]
    InsufficientRadius { needed: usize, have: usize },

    #[error("normal-form oracle is not idempotent on `{0}`")]
    OracleInconsistency(String),

    #[error("membership query of canonical length {len} exceeds the enumerated radius {radius}")]
    OutsideRadius { len: usize, radius: usize },

    #[error("resource limit reached: {0}")]
    ResourceLimit(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

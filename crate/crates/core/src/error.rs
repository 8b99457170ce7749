use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("extension degree m={m} outside supported range 1..={max}")]
    DegreeOutOfRange { m: u32, max: u32 },

    #[error("reduction polynomial {reduction:#x} is not primitive of degree {m}: {reason}")]
    NotPrimitive {
        m: u32,
        reduction: u64,
        reason: String,
    },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("denominator of f vanishes at v={v:#x} (k={k}, m={m})")]
    FMapDomain { v: u32, k: u32, m: u32 },

    #[error("{what} would need about {cost} operations (cap {cap}); raise the cap to run it")]
    CostRefused { what: String, cost: u128, cap: u32 },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("inexact polynomial division, remainder {remainder:?}")]
    InexactDivision { remainder: Vec<String> },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {0}: rank must be at least 1")]
    InvalidRank(usize),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank {rank} exceeds the configured limit {limit}")]
    RankLimit { rank: usize, limit: usize },

    #[error("weight is not regular: {0}")]
    NonRegular(String),

    #[error("spinorial weight: p_n = {0} is odd")]
    Spinorial(String),

    #[error("weight is not dominant integral: {0}")]
    NotDominant(String),

    #[error("inexact division: remainder has {terms} terms, leading term {leading}")]
    InexactDivision { terms: usize, leading: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("leading coefficient of the denominator is not invertible: {0}")]
    NonInvertibleLeading(String),

    #[error("mixed parity in {0}: coordinates must be all integral or all half-integral")]
    MixedParity(String),

    #[error("wrong parity for lift direction: expected {expected}, got {got}")]
    WrongParity {
        expected: &'static str,
        got: &'static str,
    },

    #[error("truncation order {0} is too small: no reliable weights")]
    OrderTooSmall(usize),

    #[error("element is not central: {0}")]
    NotCentral(String),

    #[error("structural failure: {0}")]
    Structural(String),

    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

use crate::graph::PathViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point has {got} coordinates but the function has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what} = {value} is out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("sequence lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("code shapes differ: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),

    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("term of degree {degree} in a quadratic form")]
    NotQuadratic { degree: usize },

    #[error("complemented literal in a quadratic monomial")]
    ComplementedQuadratic,

    #[error(transparent)]
    Path(#[from] PathViolation),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("code set carries no construction provenance")]
    MissingProvenance,
}

pub(crate) fn out_of_range(what: &'static str, value: impl TryInto<i64>, range: impl Into<String>) -> Error {
    Error::OutOfRange {
        what,
        value: value.try_into().unwrap_or(i64::MAX),
        range: range.into(),
    }
}

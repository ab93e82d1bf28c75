use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid representation: {0}")]
    InvalidRep(String),

    #[error("p must be odd and prime, got {0}")]
    NotOddPrime(u64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("subgroup of order {order} is not a subgroup of C_{group}")]
    NotSubgroup { order: u64, group: u64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("map `{map}` is not well defined on generator {generator}")]
    IllDefined { map: String, generator: usize },

    #[error("Mackey functor fails its axioms: {}", .0.join("; "))]
    Axioms(Vec<String>),

    #[error("malformed input: {0}")]
    Parse(String),
}

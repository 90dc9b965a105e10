use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("elements live in different groups (modulus {left} vs {right})")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown generator '{name}' at position {pos}")]
    UnknownGenerator { name: char, pos: usize },

    #[error("generator '{0}' has no assigned value")]
    Unassigned(char),

    #[error("word is not cyclically reduced")]
    NotReduced,

    #[error("word is a proper power")]
    NotPrimitive,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular matrix")]
    Singular,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
}

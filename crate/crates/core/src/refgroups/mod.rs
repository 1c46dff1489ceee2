//! Rank-2 complex reflection groups.

mod catalog;
mod enumerate;
mod invariants;
mod matrix;

pub use catalog::*;
pub use enumerate::*;
pub use invariants::*;
pub use matrix::Matrix2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RefGroupError {
    #[error("invalid group specification `{0}`")]
    BadSpec(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("group has no generators")]
    NoGenerators,
    #[error("closure exceeded {limit} elements")]
    ClosureOverflow { limit: usize },
    #[error("{0}")]
    Inconsistent(String),
}

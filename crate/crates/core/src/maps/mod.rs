//! Polynomial self-maps of the plane.

mod analysis;
mod polymap;

pub use analysis::*;
pub use polymap::*;

use crate::groebner::GroebnerError;
use crate::numberfield::NumberFieldError;
use crate::polyring::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("invalid parameters: {0}")]
    Domain(String),
    #[error("map is not proper")]
    NotProper,
    #[error("generic fibers disagree after repeated draws")]
    DegreeDisagreement,
    #[error("relation is not monic in its main variable")]
    NonMonicRelation,
    #[error("map is not invertible")]
    NotInvertible,
    #[error("stored inverse does not compose to the identity")]
    NotInverse,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<NumberFieldError> for MapError {
    fn from(e: NumberFieldError) -> Self {
        MapError::Poly(e.into())
    }
}

//! Sparse multivariate polynomials over Q(ζ_N).

mod calculus;
mod division;
mod monomial;
mod poly;

pub use calculus::{hessian_det, jacobian_det, monomial_poly};
pub use division::{
    bareiss_det, content_in, divides, exact_div, gcd_poly, resultant, squarefree_decomposition,
    squarefree_part,
};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::{MultiPoly, Ring, CANONICAL};

use crate::numberfield::NumberFieldError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no assignment for variable `{0}`")]
    MissingVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error("operation needs at least two variables")]
    NotBivariate,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("division leaves a remainder")]
    NotDivisible,
    #[error(transparent)]
    NumberField(#[from] NumberFieldError),
    #[error("bad JSON term list: {0}")]
    Json(String),
}

//! Exact coefficient arithmetic: Q and the cyclotomic fields Q(ζ_N).
//!
//! Every polynomial in the crate carries coefficients in some Q(ζ_N); the
//! rational field is the conductor-1 case.

mod cyclo;
mod rational;

pub use cyclo::{cyclotomic_polynomial, euler_phi, CycloNumber, MAX_CONDUCTOR};
pub use rational::{gcd_numerators, lcm_denominators, ParseRationalError, Rational};


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumberFieldError {
    #[error("conductor mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u32, to: u32 },
    #[error("unsupported conductor {0}")]
    BadConductor(u32),
    #[error("Q(zeta_{conductor}) needs {expected} coordinates, got {got}")]
    BadLength {
        conductor: u32,
        expected: usize,
        got: usize,
    },
}

/// Least common multiple, used to pick a shared conductor.
pub fn lcm_u32(a: u32, b: u32) -> u32 {
    num_integer::lcm(a, b)
}

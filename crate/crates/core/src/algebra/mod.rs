//! Exact-arithmetic algebra of exp-polynomials.
//!
//! Everything downstream (closed-form residuals, the homotopy recursion,
//! Maclaurin inputs to Padé construction) runs on the types in this module:
//! [`Rat`] for coefficients, [`ExpPoly`] for functions of the form
//! `sum_mu P_mu(t) e^{mu t}`, and [`MaclaurinCoeffs`] for truncated series.
//!
//! Only rational modes are representable; the model here never produces
//! anything else, and keeping modes rational keeps every operation exact.
//! All values are immutable after construction and all operations are pure.

mod exp_poly;
mod maclaurin;
mod rat;
mod solve;

pub use exp_poly::ExpPoly;
pub use maclaurin::MaclaurinCoeffs;
pub use rat::{ParseRatError, Rat};
pub use solve::solve_driven;

/// A parameter fell outside its mathematical domain.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("drag coefficient B must be positive, got {0}")]
    NonPositiveDrag(Rat),
}

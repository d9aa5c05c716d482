//! Motion of a spherical solid particle in plane Couette flow: exact
//! closed-form trajectories, regenerated homotopy-perturbation series, Padé
//! approximants, and the measurement harness that compares them.
//!
//! The crate is organized around one idea: every symbolic object (series
//! term, residual, approximant coefficient) is kept in exact rational
//! arithmetic, and floats appear only at evaluation time. That makes the
//! series fixtures and algebraic identities checkable with structural
//! equality instead of tolerances.
//!
//! Modules:
//! - [`algebra`]: rationals, exp-polynomials, Maclaurin coefficients, and the
//!   exact driven-ODE solve they support.
//! - [`exact`]: the closed-form solution in both regimes, residual operator,
//!   exact series expansions.
//! - [`hpm`]: the order-by-order homotopy expansion.
//! - [`pade`]: approximant construction, evaluation, and reference fixtures.
//! - [`oracle`]: an independent fixed-step RK4 integrator.
//! - [`analysis`]: grid sweeps, error columns, divergence times.
//! - [`output`]: deterministic CSV/JSON rendering.

pub mod algebra;
pub mod analysis;
pub mod exact;
pub mod hpm;
pub mod oracle;
pub mod output;
pub mod pade;

pub use algebra::{solve_driven, DomainError, ExpPoly, MaclaurinCoeffs, Rat};
pub use exact::{derive_params, DerivedParams, ModelParams, Regime, TrajectorySample};
pub use pade::RationalFn;

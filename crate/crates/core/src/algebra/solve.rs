//! Exact solution of the driven second-order equation `z'' + B z' = f`.

use super::{DomainError, ExpPoly, Rat};

/// Solve `z'' + B z' = f` exactly over the exp-polynomial class, with
/// `z(0) = z0` and `z'(0) = zdot0`.
///
/// Both integrations run through [`ExpPoly::antiderivative`], whose
/// back-substitution is the method of undetermined coefficients; forcing
/// modes at `0` or `-B` (resonant with the homogeneous solutions) pick up
/// their polynomial degree lift there, with no limit-taking involved.
///
/// Returns a parameter-domain error when `B <= 0`.
pub fn solve_driven(b: &Rat, f: &ExpPoly, z0: &Rat, zdot0: &Rat) -> Result<ExpPoly, DomainError> {
    if !b.is_positive() {
        return Err(DomainError::NonPositiveDrag(b.clone()));
    }
    // (z' e^{Bt})' = f e^{Bt}, so z' = e^{-Bt} (zdot0 + int_0^t f e^{Bs} ds).
    let exp_pos = ExpPoly::term(b.clone(), vec![Rat::one()]);
    let exp_neg = ExpPoly::term(-b, vec![Rat::one()]);
    let g = (f * &exp_pos).antiderivative();
    let zdot = &exp_neg * &(&g + &ExpPoly::constant(zdot0.clone()));
    let z = &zdot.antiderivative() + &ExpPoly::constant(z0.clone());
    Ok(z)
}

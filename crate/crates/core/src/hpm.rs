//! Order-by-order homotopy-perturbation expansion of the particle system,
//! regenerated in exact exp-polynomial arithmetic.
//!
//! Order 0 solves `z'' + B z' = 0` with the problem's initial data; each
//! later order feeds the previous one back through the couplings,
//!
//! ```text
//!   x_n'' + B x_n' = A y_{n-1}' + B alpha y_{n-1}
//!   y_n'' + B y_n' = -Cbar (x_{n-1}' - alpha y_{n-1})
//! ```
//!
//! with zero initial data, each solved exactly by
//! [`solve_driven`](crate::algebra::solve_driven). Every term lives on the
//! mode set `{0, -B}`.

use crate::algebra::{solve_driven, ExpPoly, Rat};
use crate::exact::ModelParams;

/// A computed expansion: orders `0..=N` of `(x_n, y_n)`, cached eagerly.
#[derive(Clone, Debug, PartialEq)]
pub struct HpmExpansion {
    params: ModelParams,
    orders: Vec<(ExpPoly, ExpPoly)>,
}

/// Requested an order beyond what an expansion holds.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("partial sum order {requested} out of range: expansion has orders 0..={max}")]
pub struct OrderOutOfRange {
    pub requested: usize,
    pub max: usize,
}

/// Expand through order `n_orders` (inclusive), producing `n_orders + 1`
/// order pairs. `B > 0` is guaranteed by [`ModelParams`], so the inner
/// solves cannot fail.
pub fn expand(p: &ModelParams, n_orders: usize) -> HpmExpansion {
    let zero = Rat::zero();
    let solve = |f: &ExpPoly, zdot0: &Rat| {
        solve_driven(p.b(), f, &zero, zdot0).expect("B > 0 by ModelParams invariant")
    };

    let mut orders = Vec::with_capacity(n_orders + 1);
    orders.push((solve(&ExpPoly::zero(), p.u()), solve(&ExpPoly::zero(), p.v())));
    for n in 1..=n_orders {
        let (x_prev, y_prev) = &orders[n - 1];
        let b_alpha = p.b() * p.alpha();
        let fx = &y_prev.differentiate().scale(p.a()) + &y_prev.scale(&b_alpha);
        let slip = &x_prev.differentiate() - &y_prev.scale(p.alpha());
        let fy = slip.scale(&-(p.cbar()));
        orders.push((solve(&fx, &zero), solve(&fy, &zero)));
    }
    HpmExpansion { params: p.clone(), orders }
}

impl HpmExpansion {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Highest computed order.
    pub fn max_order(&self) -> usize {
        self.orders.len() - 1
    }

    /// The `(x_n, y_n)` pair for one order.
    pub fn order(&self, n: usize) -> Result<&(ExpPoly, ExpPoly), OrderOutOfRange> {
        self.orders.get(n).ok_or(OrderOutOfRange { requested: n, max: self.max_order() })
    }

    pub fn orders(&self) -> &[(ExpPoly, ExpPoly)] {
        &self.orders
    }

    /// Exact sums `S_N = sum_{n=0}^{N} (x_n, y_n)`.
    pub fn partial_sum(&self, n: usize) -> Result<(ExpPoly, ExpPoly), OrderOutOfRange> {
        if n > self.max_order() {
            return Err(OrderOutOfRange { requested: n, max: self.max_order() });
        }
        let mut x = ExpPoly::zero();
        let mut y = ExpPoly::zero();
        for (xn, yn) in &self.orders[..=n] {
            x = &x + xn;
            y = &y + yn;
        }
        Ok((x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::residual;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn unit_case() -> ModelParams {
        ModelParams::default()
    }

    #[test]
    fn order_zero_general_form() {
        // x_0 = (u/B)(1 - e^{-Bt})
        let p = ModelParams::new(r(1), r(2), r(1), r(1), r(3), r(1)).unwrap();
        let e = expand(&p, 0);
        let (x0, _) = e.order(0).unwrap();
        let expect = ExpPoly::from_terms([
            (r(0), vec![q(3, 2)]),
            (r(-2), vec![q(-3, 2)]),
        ]);
        assert_eq!(x0, &expect);
    }

    #[test]
    fn first_order_x_term() {
        let e = expand(&unit_case(), 1);
        let (x1, _) = e.order(1).unwrap();
        // e^{-t} + t - 1
        let expect = ExpPoly::from_terms([(r(-1), vec![r(1)]), (r(0), vec![r(-1), r(1)])]);
        assert_eq!(x1, &expect);
    }

    #[test]
    fn second_order_y_term() {
        let e = expand(&unit_case(), 2);
        let (_, y2) = e.order(2).unwrap();
        // -t^2 e^{-t} - 6t e^{-t} - 11 e^{-t} + t^2/2 - 5t + 11
        let expect = ExpPoly::from_terms([
            (r(-1), vec![r(-11), r(-6), r(-1)]),
            (r(0), vec![r(11), r(-5), q(1, 2)]),
        ]);
        assert_eq!(y2, &expect);
    }

    #[test]
    fn partial_sum_n1_x_is_t() {
        let e = expand(&unit_case(), 4);
        let (x, _) = e.partial_sum(1).unwrap();
        assert_eq!(x, ExpPoly::poly(vec![r(0), r(1)]));
    }

    #[test]
    fn partial_sum_n0_is_order_zero() {
        let e = expand(&unit_case(), 3);
        assert_eq!(&e.partial_sum(0).unwrap(), e.order(0).unwrap());
    }

    #[test]
    fn partial_sum_n4_y_at_one() {
        let e = expand(&unit_case(), 4);
        let (_, y) = e.partial_sum(4).unwrap();
        let val = y.evaluate(1.0);
        assert!((val - 0.36811).abs() <= 5e-4, "S_4 y(1) = {val}");
    }

    #[test]
    fn partial_sum_out_of_range() {
        let e = expand(&unit_case(), 2);
        let err = e.partial_sum(3).unwrap_err();
        assert_eq!(err, OrderOutOfRange { requested: 3, max: 2 });
        assert!(e.order(9).is_err());
    }

    #[test]
    fn initial_values_per_order() {
        let p = ModelParams::new(r(2), r(3), q(5, 2), q(1, 2), r(1), r(-1)).unwrap();
        let e = expand(&p, 5);
        let (x0, y0) = e.order(0).unwrap();
        assert_eq!(x0.value_at_zero(), Rat::zero());
        assert_eq!(y0.value_at_zero(), Rat::zero());
        assert_eq!(x0.differentiate().value_at_zero(), *p.u());
        assert_eq!(y0.differentiate().value_at_zero(), *p.v());
        for n in 1..=5 {
            let (xn, yn) = e.order(n).unwrap();
            assert_eq!(xn.value_at_zero(), Rat::zero());
            assert_eq!(yn.value_at_zero(), Rat::zero());
            assert_eq!(xn.differentiate().value_at_zero(), Rat::zero());
            assert_eq!(yn.differentiate().value_at_zero(), Rat::zero());
        }
    }

    #[test]
    fn modes_stay_in_zero_and_minus_b() {
        let p = ModelParams::new(r(1), q(3, 2), r(2), r(1), r(1), r(1)).unwrap();
        let e = expand(&p, 6);
        let allowed = [Rat::zero(), -p.b()];
        for (xn, yn) in e.orders() {
            for m in xn.modes().chain(yn.modes()) {
                assert!(allowed.contains(m), "unexpected mode {m}");
            }
        }
    }

    #[test]
    fn per_order_identities_hold_exactly() {
        let p = ModelParams::new(r(1), r(2), q(3, 2), r(1), r(1), r(-2)).unwrap();
        let e = expand(&p, 6);
        for n in 1..=6 {
            let (xn, yn) = e.order(n).unwrap();
            let (xp, yp) = e.order(n - 1).unwrap();
            let lhs_x = &xn.differentiate().differentiate() + &xn.differentiate().scale(p.b());
            let rhs_x = &yp.differentiate().scale(p.a()) + &yp.scale(&(p.b() * p.alpha()));
            assert_eq!(lhs_x, rhs_x, "x identity at order {n}");
            let lhs_y = &yn.differentiate().differentiate() + &yn.differentiate().scale(p.b());
            let rhs_y = (&xp.differentiate() - &yp.scale(p.alpha())).scale(&-(p.cbar()));
            assert_eq!(lhs_y, rhs_y, "y identity at order {n}");
        }
    }

    #[test]
    fn telescoped_residual_is_coupling_of_last_order() {
        let p = unit_case();
        let e = expand(&p, 8);
        for n in 0..=8 {
            let (sx, sy) = e.partial_sum(n).unwrap();
            let (r1, r2) = residual(&p, &sx, &sy);
            let (xn, yn) = e.order(n).unwrap();
            let expect_r1 =
                -&(&yn.differentiate().scale(p.a()) + &yn.scale(&(p.b() * p.alpha())));
            let expect_r2 = (&xn.differentiate() - &yn.scale(p.alpha())).scale(p.cbar());
            assert_eq!(r1, expect_r1, "R1 telescoping at N={n}");
            assert_eq!(r2, expect_r2, "R2 telescoping at N={n}");
        }
    }

    #[test]
    fn partial_sums_keep_initial_data() {
        let p = ModelParams::new(r(1), r(1), r(2), r(1), r(1), r(1)).unwrap();
        let e = expand(&p, 7);
        for n in 0..=7 {
            let (sx, sy) = e.partial_sum(n).unwrap();
            assert_eq!(sx.value_at_zero(), Rat::zero());
            assert_eq!(sy.value_at_zero(), Rat::zero());
            assert_eq!(sx.differentiate().value_at_zero(), *p.u());
            assert_eq!(sy.differentiate().value_at_zero(), *p.v());
        }
    }

    #[test]
    fn maclaurin_agreement_degree_nondecreasing() {
        for p in [unit_case(), ModelParams::new(r(1), r(1), r(2), r(1), r(1), r(1)).unwrap()] {
            let order = 20;
            let (ex, ey) = crate::exact::maclaurin_position(&p, order);
            let e = expand(&p, 8);
            let mut prev_x = 0usize;
            let mut prev_y = 0usize;
            for n in 0..=8 {
                let (sx, sy) = e.partial_sum(n).unwrap();
                let ax = sx.maclaurin(order).agreement_order(&ex).unwrap_or(0);
                let ay = sy.maclaurin(order).agreement_order(&ey).unwrap_or(0);
                assert!(ax >= prev_x, "x agreement degree dropped at N={n}: {ax} < {prev_x}");
                assert!(ay >= prev_y, "y agreement degree dropped at N={n}: {ay} < {prev_y}");
                prev_x = ax;
                prev_y = ay;
            }
            // the final sums must agree well past the trivial degree
            assert!(prev_x >= 9, "x agreement degree only {prev_x} at N=8");
            assert!(prev_y >= 9, "y agreement degree only {prev_y} at N=8");
        }
    }
}

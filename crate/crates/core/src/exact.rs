//! Closed-form solution of the particle-in-Couette-flow system
//!
//! ```text
//!   x'' - A y' + B (x' - alpha y) = 0        x(0) = 0, x'(0) = u
//!   y'' + B y' + Cbar (x' - alpha y) = 0     y(0) = 0, y'(0) = v
//! ```
//!
//! with exact rational parameters. The coupling `Cbar` is stored directly;
//! a convenience constructor accepts `C` and stores `Cbar = C + A`.
//!
//! The solution has two regimes, split on the exact rational comparison
//! `lambda^2 = Cbar (alpha - A)` versus `B^2`: the generic kernel form, and a
//! singular-limit form when they coincide. Both are evaluated here, together
//! with an exact symbolic residual operator and exact Maclaurin expansions.

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{DomainError, ExpPoly, MaclaurinCoeffs, Rat};

/// The six model coefficients, all exact rationals. `B > 0` is enforced at
/// construction and relied on throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    a: Rat,
    b: Rat,
    cbar: Rat,
    alpha: Rat,
    u: Rat,
    v: Rat,
}

impl ModelParams {
    /// Construct with the coupling `Cbar` given directly.
    pub fn new(a: Rat, b: Rat, cbar: Rat, alpha: Rat, u: Rat, v: Rat) -> Result<Self, DomainError> {
        if !b.is_positive() {
            return Err(DomainError::NonPositiveDrag(b));
        }
        Ok(ModelParams { a, b, cbar, alpha, u, v })
    }

    /// Construct from `C`, storing `Cbar = C + A`.
    pub fn with_c(a: Rat, b: Rat, c: Rat, alpha: Rat, u: Rat, v: Rat) -> Result<Self, DomainError> {
        let cbar = &c + &a;
        ModelParams::new(a, b, cbar, alpha, u, v)
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn cbar(&self) -> &Rat {
        &self.cbar
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn u(&self) -> &Rat {
        &self.u
    }

    pub fn v(&self) -> &Rat {
        &self.v
    }

    /// Same parameters with different initial velocities.
    pub fn with_initial_velocity(&self, u: Rat, v: Rat) -> Self {
        ModelParams { u, v, ..self.clone() }
    }
}

/// All six parameters 1, with unit coupling `Cbar = 1`. Under these values
/// the solution collapses to `x = 2 - 2e^{-t} - t e^{-t}`, `y = t e^{-t}`.
impl Default for ModelParams {
    fn default() -> Self {
        let one = Rat::one;
        ModelParams::new(one(), one(), one(), one(), one(), one()).unwrap()
    }
}

/// Which closed form applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `lambda^2 != B^2`; carries the kernel-form constants.
    Generic { beta: Rat, gamma: Rat },
    /// `lambda^2 = B^2` exactly; the singular-limit form applies.
    LambdaEqualsB,
}

/// Derived constants of the closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedParams {
    pub lambda_sq: Rat,
    pub regime: Regime,
}

/// Compute `lambda^2 = Cbar (alpha - A)` and, in the generic regime,
/// `beta = (vB - u Cbar) / (B^2 - lambda^2)` and
/// `gamma = ((uB + vA) - 2 B beta alpha) / (B^2 - lambda^2)`.
/// Regime selection is the exact rational comparison `lambda^2 = B^2`.
pub fn derive_params(p: &ModelParams) -> DerivedParams {
    let lambda_sq = &p.cbar * &(&p.alpha - &p.a);
    let b_sq = &p.b * &p.b;
    if lambda_sq == b_sq {
        return DerivedParams { lambda_sq, regime: Regime::LambdaEqualsB };
    }
    let denom = &b_sq - &lambda_sq;
    let beta = &(&(&p.v * &p.b) - &(&p.u * &p.cbar)) / &denom;
    let two_b_beta_alpha = &(&(&p.b * &beta) * &p.alpha) * &Rat::from_int(2);
    let gamma = &(&(&(&p.u * &p.b) + &(&p.v * &p.a)) - &two_b_beta_alpha) / &denom;
    DerivedParams { lambda_sq, regime: Regime::Generic { beta, gamma } }
}

/// Evaluate `Ch = cosh(lambda t)` and `Sh = sinh(lambda t) / lambda` as
/// entire functions of `lambda^2`: hyperbolic for `lambda^2 > 0`, `(1, t)` at
/// zero, and the trigonometric continuation `(cos wt, sin(wt)/w)` with
/// `w = sqrt(-lambda^2)` for `lambda^2 < 0`. The sign test is exact.
pub fn kernels(lambda_sq: &Rat, t: f64) -> (f64, f64) {
    if lambda_sq.is_zero() {
        (1.0, t)
    } else if lambda_sq.is_positive() {
        let l = lambda_sq.to_f64().sqrt();
        ((l * t).cosh(), (l * t).sinh() / l)
    } else {
        let w = (-lambda_sq.to_f64()).sqrt();
        ((w * t).cos(), (w * t).sin() / w)
    }
}

/// Relative slack under which the generic kernel form is abandoned for the
/// singular-limit form: `|B^2 - lambda^2| <= GUARD * max(B^2, 1)` would put
/// catastrophic cancellation into `beta` and `gamma`.
const NEAR_DEGENERATE_GUARD: f64 = 1e-9;

fn use_limit_form(p: &ModelParams, dp: &DerivedParams) -> bool {
    match dp.regime {
        Regime::LambdaEqualsB => true,
        Regime::Generic { .. } => {
            let b_sq = (&p.b * &p.b).to_f64();
            let gap = (b_sq - dp.lambda_sq.to_f64()).abs();
            gap <= NEAR_DEGENERATE_GUARD * b_sq.max(1.0)
        }
    }
}

struct LimitCoeffs {
    // x = c2 t^2 + c1 t + c0 (1 - e^{-2Bt}); y = d1 t + d0 (1 - e^{-2Bt})
    c2: Rat,
    c1: Rat,
    c0: Rat,
    d1: Rat,
    d0: Rat,
}

fn limit_coeffs(p: &ModelParams) -> LimitCoeffs {
    let vb_minus_ucbar = &(&p.v * &p.b) - &(&p.u * &p.cbar);
    let vb_plus_ucbar = &(&p.v * &p.b) + &(&p.u * &p.cbar);
    let ub_plus_va = &(&p.u * &p.b) + &(&p.v * &p.a);
    let ub_minus_va = &(&p.u * &p.b) - &(&p.v * &p.a);
    let two_b = &p.b * &Rat::from_int(2);
    let four_b = &p.b * &Rat::from_int(4);
    let b_sq = &p.b * &p.b;
    let c2 = &(&vb_minus_ucbar * &p.alpha) / &four_b;
    let c1 = &(&(&two_b * &ub_plus_va) - &(&vb_minus_ucbar * &p.alpha)) / &(&b_sq * &Rat::from_int(4));
    let c0 = &(&(&two_b * &ub_minus_va) + &(&vb_minus_ucbar * &p.alpha))
        / &(&(&b_sq * &p.b) * &Rat::from_int(8));
    let d1 = &vb_minus_ucbar / &two_b;
    let d0 = &vb_plus_ucbar / &(&b_sq * &Rat::from_int(4));
    LimitCoeffs { c2, c1, c0, d1, d0 }
}

fn limit_position(p: &ModelParams, t: f64) -> (f64, f64) {
    let lc = limit_coeffs(p);
    let decay = 1.0 - (-2.0 * p.b.to_f64() * t).exp();
    let x = lc.c2.to_f64() * t * t + lc.c1.to_f64() * t + lc.c0.to_f64() * decay;
    let y = lc.d1.to_f64() * t + lc.d0.to_f64() * decay;
    (x, y)
}

fn limit_velocity(p: &ModelParams, t: f64) -> (f64, f64) {
    let lc = limit_coeffs(p);
    let two_b = 2.0 * p.b.to_f64();
    let e = (-two_b * t).exp();
    let vx = 2.0 * lc.c2.to_f64() * t + lc.c1.to_f64() + lc.c0.to_f64() * two_b * e;
    let vy = lc.d1.to_f64() + lc.d0.to_f64() * two_b * e;
    (vx, vy)
}

fn generic_position(p: &ModelParams, dp: &DerivedParams, t: f64) -> (f64, f64) {
    let Regime::Generic { beta, gamma } = &dp.regime else {
        unreachable!("generic_position called in the wrong regime");
    };
    let (ch, sh) = kernels(&dp.lambda_sq, t);
    let e = (-p.b.to_f64() * t).exp();
    let (beta_f, gamma_f) = (beta.to_f64(), gamma.to_f64());
    let (u, v, b, alpha) = (p.u.to_f64(), p.v.to_f64(), p.b.to_f64(), p.alpha.to_f64());
    let x = beta_f * alpha * t + gamma_f - gamma_f * e * ch + (u - beta_f * alpha - b * gamma_f) * e * sh;
    let y = beta_f - beta_f * e * ch + (v - b * beta_f) * e * sh;
    (x, y)
}

fn generic_velocity(p: &ModelParams, dp: &DerivedParams, t: f64) -> (f64, f64) {
    let Regime::Generic { beta, gamma } = &dp.regime else {
        unreachable!("generic_velocity called in the wrong regime");
    };
    // d/dt Ch = lambda^2 Sh and d/dt Sh = Ch, so
    // d/dt (e^{-Bt} Ch) = e (lambda^2 Sh - B Ch), d/dt (e^{-Bt} Sh) = e (Ch - B Sh).
    let (ch, sh) = kernels(&dp.lambda_sq, t);
    let l2 = dp.lambda_sq.to_f64();
    let e = (-p.b.to_f64() * t).exp();
    let (beta_f, gamma_f) = (beta.to_f64(), gamma.to_f64());
    let (u, v, b, alpha) = (p.u.to_f64(), p.v.to_f64(), p.b.to_f64(), p.alpha.to_f64());
    let d_ech = e * (l2 * sh - b * ch);
    let d_esh = e * (ch - b * sh);
    let vx = beta_f * alpha - gamma_f * d_ech + (u - beta_f * alpha - b * gamma_f) * d_esh;
    let vy = -beta_f * d_ech + (v - b * beta_f) * d_esh;
    (vx, vy)
}

/// Position `(x, y)` at time `t`.
pub fn position(p: &ModelParams, t: f64) -> (f64, f64) {
    let dp = derive_params(p);
    if use_limit_form(p, &dp) {
        limit_position(p, t)
    } else {
        generic_position(p, &dp, t)
    }
}

/// Velocity `(x', y')` at time `t`, from the closed-form derivative.
pub fn velocity(p: &ModelParams, t: f64) -> (f64, f64) {
    let dp = derive_params(p);
    if use_limit_form(p, &dp) {
        limit_velocity(p, t)
    } else {
        generic_velocity(p, &dp, t)
    }
}

/// Exact symbolic residuals of the governing equations for candidate
/// exp-polynomials `(x, y)`:
///
/// `R1 = x'' - A y' + B (x' - alpha y)` and
/// `R2 = y'' + B y' + Cbar (x' - alpha y)`.
pub fn residual(p: &ModelParams, x: &ExpPoly, y: &ExpPoly) -> (ExpPoly, ExpPoly) {
    let xdot = x.differentiate();
    let ydot = y.differentiate();
    let slip = &xdot - &y.scale(&p.alpha);
    let r1 = &(&xdot.differentiate() - &ydot.scale(&p.a)) + &slip.scale(&p.b);
    let r2 = &(&ydot.differentiate() + &ydot.scale(&p.b)) + &slip.scale(&p.cbar);
    (r1, r2)
}

fn inv_factorials(order: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(order + 1);
    let mut fact = BigInt::from(1);
    out.push(Rat::one());
    for i in 1..=order {
        fact *= BigInt::from(i);
        out.push(Rat::from_bigints(BigInt::from(1), fact.clone()));
    }
    out
}

/// Series of `e^{r t}` through `t^order`.
fn exp_series(r: &Rat, order: usize) -> Vec<Rat> {
    let inv_fact = inv_factorials(order);
    let mut pow = Rat::one();
    let mut out = Vec::with_capacity(order + 1);
    for f in inv_fact {
        out.push(&pow * &f);
        pow = &pow * r;
    }
    out
}

fn series_convolve(a: &[Rat], b: &[Rat], order: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

/// Exact Maclaurin coefficients of `(x(t), y(t))` through `t^order`.
///
/// Valid in both regimes: the generic form expands the kernels as entire
/// series in `lambda^2`, the singular-limit form expands `e^{-2Bt}` directly.
pub fn maclaurin_position(p: &ModelParams, order: usize) -> (MaclaurinCoeffs, MaclaurinCoeffs) {
    let dp = derive_params(p);
    match &dp.regime {
        Regime::Generic { beta, gamma } => {
            let inv_fact = inv_factorials(order);
            // cosh(lambda t) and sinh(lambda t)/lambda as series in lambda^2
            let mut ch = vec![Rat::zero(); order + 1];
            let mut sh = vec![Rat::zero(); order + 1];
            let mut l2_pow = Rat::one();
            for k in 0.. {
                let even = 2 * k;
                if even > order {
                    break;
                }
                ch[even] = &l2_pow * &inv_fact[even];
                if even < order {
                    sh[even + 1] = &l2_pow * &inv_fact[even + 1];
                }
                l2_pow = &l2_pow * &dp.lambda_sq;
            }
            let e = exp_series(&(-&p.b), order);
            let ech = series_convolve(&e, &ch, order);
            let esh = series_convolve(&e, &sh, order);

            let beta_alpha = beta * &p.alpha;
            let wx = &(&p.u - &beta_alpha) - &(&p.b * gamma);
            let wy = &p.v - &(&p.b * beta);
            let mut x = vec![Rat::zero(); order + 1];
            let mut y = vec![Rat::zero(); order + 1];
            for j in 0..=order {
                x[j] = &(&wx * &esh[j]) - &(gamma * &ech[j]);
                y[j] = &(&wy * &esh[j]) - &(beta * &ech[j]);
            }
            x[0] = &x[0] + gamma;
            y[0] = &y[0] + beta;
            if order >= 1 {
                x[1] = &x[1] + &beta_alpha;
            }
            (MaclaurinCoeffs::new(x), MaclaurinCoeffs::new(y))
        }
        Regime::LambdaEqualsB => {
            let lc = limit_coeffs(p);
            let e2 = exp_series(&(&(-&p.b) * &Rat::from_int(2)), order);
            let mut x = vec![Rat::zero(); order + 1];
            let mut y = vec![Rat::zero(); order + 1];
            for j in 1..=order {
                // (1 - e^{-2Bt}) has zero constant term
                x[j] = -&(&lc.c0 * &e2[j]);
                y[j] = -&(&lc.d0 * &e2[j]);
            }
            if order >= 1 {
                x[1] = &x[1] + &lc.c1;
                y[1] = &y[1] + &lc.d1;
            }
            if order >= 2 {
                x[2] = &x[2] + &lc.c2;
            }
            (MaclaurinCoeffs::new(x), MaclaurinCoeffs::new(y))
        }
    }
}

/// Exact Maclaurin coefficients of `(x'(t), y'(t))` through `t^order`.
pub fn maclaurin_velocity(p: &ModelParams, order: usize) -> (MaclaurinCoeffs, MaclaurinCoeffs) {
    let (x, y) = maclaurin_position(p, order + 1);
    let shift = |m: &MaclaurinCoeffs| {
        let v: Vec<Rat> = (0..=order)
            .map(|j| &m.coeff(j + 1) * &Rat::from_int(j as i64 + 1))
            .collect();
        MaclaurinCoeffs::new(v)
    };
    (shift(&x), shift(&y))
}

/// One sampled trajectory point; shared by the exact engine and the
/// numerical integrator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

/// Closed-form samples on the grid `0, dt, 2dt, ...` up to and including
/// `t_max` (final step shortened when `dt` does not divide `t_max`).
pub fn sample_trajectory(p: &ModelParams, t_max: f64, dt: f64) -> Vec<TrajectorySample> {
    let mut samples = Vec::new();
    let mut k = 0u64;
    loop {
        let t = (k as f64) * dt;
        let t = if t >= t_max { t_max } else { t };
        let (x, y) = position(p, t);
        let (vx, vy) = velocity(p, t);
        samples.push(TrajectorySample { t, x, y, vx, vy });
        if t >= t_max {
            return samples;
        }
        k += 1;
    }
}

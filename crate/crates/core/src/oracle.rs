//! Independent numerical check on the closed forms: classical fixed-step RK4
//! on the first-order reformulation
//!
//! ```text
//!   x' = vx,  y' = vy,
//!   vx' = A vy - B (vx - alpha y),
//!   vy' = -B vy - Cbar (vx - alpha y),
//! ```
//!
//! sharing no code path with the exact engine. Fixed step keeps the run
//! deterministic; the system is linear and non-stiff at desk scale, so no
//! adaptivity is needed.

use crate::exact::{ModelParams, TrajectorySample};

/// Integration state; components must stay finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("invalid step: need t_end > 0 and 0 < h <= t_end, got t_end = {t_end}, h = {h}")]
    BadStep { t_end: f64, h: f64 },
    #[error("integration diverged: non-finite state at t = {t}")]
    Divergence { t: f64 },
}

struct Rhs {
    a: f64,
    b: f64,
    cbar: f64,
    alpha: f64,
}

impl Rhs {
    fn eval(&self, s: StateVector) -> StateVector {
        let slip = s.vx - self.alpha * s.y;
        StateVector {
            x: s.vx,
            y: s.vy,
            vx: self.a * s.vy - self.b * slip,
            vy: -self.b * s.vy - self.cbar * slip,
        }
    }
}

fn axpy(s: StateVector, h: f64, d: StateVector) -> StateVector {
    StateVector {
        x: s.x + h * d.x,
        y: s.y + h * d.y,
        vx: s.vx + h * d.vx,
        vy: s.vy + h * d.vy,
    }
}

fn rk4_step(rhs: &Rhs, s: StateVector, h: f64) -> StateVector {
    let k1 = rhs.eval(s);
    let k2 = rhs.eval(axpy(s, h / 2.0, k1));
    let k3 = rhs.eval(axpy(s, h / 2.0, k2));
    let k4 = rhs.eval(axpy(s, h, k3));
    StateVector {
        x: s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        y: s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
        vx: s.vx + h / 6.0 * (k1.vx + 2.0 * k2.vx + 2.0 * k3.vx + k4.vx),
        vy: s.vy + h / 6.0 * (k1.vy + 2.0 * k2.vy + 2.0 * k3.vy + k4.vy),
    }
}

/// Integrate from `(0, 0, u, v)` to `t_end` with fixed step `h`, shortening
/// the final step so the last sample lands exactly on `t_end`. Samples are
/// returned for every step, including `t = 0`.
pub fn integrate(
    p: &ModelParams,
    t_end: f64,
    h: f64,
) -> Result<Vec<TrajectorySample>, OracleError> {
    if !(t_end > 0.0 && h > 0.0 && h <= t_end) {
        return Err(OracleError::BadStep { t_end, h });
    }
    let rhs = Rhs {
        a: p.a().to_f64(),
        b: p.b().to_f64(),
        cbar: p.cbar().to_f64(),
        alpha: p.alpha().to_f64(),
    };
    let mut state = StateVector { x: 0.0, y: 0.0, vx: p.u().to_f64(), vy: p.v().to_f64() };
    let mut t = 0.0;
    let mut samples = Vec::with_capacity((t_end / h).ceil() as usize + 2);
    let push = |samples: &mut Vec<TrajectorySample>, t: f64, s: StateVector| {
        samples.push(TrajectorySample { t, x: s.x, y: s.y, vx: s.vx, vy: s.vy });
    };
    push(&mut samples, t, state);
    while t < t_end {
        let step = if t + h >= t_end { t_end - t } else { h };
        state = rk4_step(&rhs, state, step);
        t = if t + h >= t_end { t_end } else { t + h };
        if !(state.x.is_finite() && state.y.is_finite() && state.vx.is_finite() && state.vy.is_finite())
        {
            return Err(OracleError::Divergence { t });
        }
        push(&mut samples, t, state);
    }
    Ok(samples)
}

/// Endpoint state only; convenience for grid evaluation.
pub fn integrate_to(p: &ModelParams, t_end: f64, h: f64) -> Result<TrajectorySample, OracleError> {
    if t_end == 0.0 {
        return Ok(TrajectorySample {
            t: 0.0,
            x: 0.0,
            y: 0.0,
            vx: p.u().to_f64(),
            vy: p.v().to_f64(),
        });
    }
    let samples = integrate(p, t_end, h.min(t_end))?;
    Ok(*samples.last().expect("integrate always returns at least the initial sample"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rat;
    use crate::exact;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn params(a: i64, b: i64, cbar: i64, alpha: i64, u: i64, v: i64) -> ModelParams {
        ModelParams::new(r(a), r(b), r(cbar), r(alpha), r(u), r(v)).unwrap()
    }

    #[test]
    fn unit_case_endpoint_matches_closed_form() {
        let p = ModelParams::default();
        let samples = integrate(&p, 1.0, 1e-3).unwrap();
        let last = samples.last().unwrap();
        assert_eq!(last.t, 1.0);
        assert!((last.y - 0.36787944117144233).abs() < 1e-9);
    }

    #[test]
    fn rest_stays_at_rest() {
        let p = params(2, 3, 5, 4, 0, 0);
        for s in integrate(&p, 2.0, 0.125).unwrap() {
            assert_eq!((s.x, s.y, s.vx, s.vy), (0.0, 0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn samples_include_both_endpoints_and_shortened_step() {
        let p = ModelParams::default();
        let samples = integrate(&p, 0.25, 0.1).unwrap();
        let times: Vec<f64> = samples.iter().map(|s| s.t).collect();
        assert_eq!(times[0], 0.0);
        assert_eq!(*times.last().unwrap(), 0.25);
        assert_eq!(times.len(), 4);
    }

    #[test]
    fn fourth_order_convergence() {
        // halving h must shrink the max error by roughly 2^4
        let cases = [
            params(0, 2, 1, 1, 1, 1), // lambda^2 = 1 > 0
            params(1, 1, 1, 1, 1, 1), // lambda^2 = 0
            params(2, 1, 1, 1, 1, 1), // lambda^2 = -1 < 0
        ];
        for p in &cases {
            let max_err = |h: f64| {
                integrate(p, 5.0, h)
                    .unwrap()
                    .iter()
                    .map(|s| {
                        let (x, y) = exact::position(p, s.t);
                        (s.x - x).abs().max((s.y - y).abs())
                    })
                    .fold(0.0, f64::max)
            };
            let ratio = max_err(1e-2) / max_err(5e-3);
            assert!(
                (12.0..=20.0).contains(&ratio),
                "convergence ratio {ratio} out of range for {p:?}"
            );
        }
    }

    #[test]
    fn degenerate_regime_agreement() {
        let p = params(0, 1, 1, 1, 1, 1); // lambda = B
        for s in integrate(&p, 10.0, 1e-3).unwrap() {
            let (x, y) = exact::position(&p, s.t);
            assert!((s.x - x).abs() < 1e-8 && (s.y - y).abs() < 1e-8, "t = {}", s.t);
        }
    }

    #[test]
    fn superposition_in_initial_velocities() {
        let base = params(1, 2, 3, 2, 0, 0);
        let p1 = base.with_initial_velocity(r(1), r(-1));
        let p2 = base.with_initial_velocity(r(2), r(2));
        let ps = base.with_initial_velocity(r(3), r(1));
        let s1 = integrate(&p1, 4.0, 1e-2).unwrap();
        let s2 = integrate(&p2, 4.0, 1e-2).unwrap();
        let ss = integrate(&ps, 4.0, 1e-2).unwrap();
        for ((a, b), s) in s1.iter().zip(&s2).zip(&ss) {
            assert!((s.x - (a.x + b.x)).abs() < 1e-10);
            assert!((s.y - (a.y + b.y)).abs() < 1e-10);
            assert!((s.vx - (a.vx + b.vx)).abs() < 1e-10);
            assert!((s.vy - (a.vy + b.vy)).abs() < 1e-10);
        }
    }

    #[test]
    fn bad_steps_rejected() {
        let p = ModelParams::default();
        assert!(matches!(integrate(&p, 0.0, 0.1), Err(OracleError::BadStep { .. })));
        assert!(matches!(integrate(&p, 1.0, 0.0), Err(OracleError::BadStep { .. })));
        assert!(matches!(integrate(&p, 1.0, 2.0), Err(OracleError::BadStep { .. })));
    }

    #[test]
    fn integrate_to_handles_zero() {
        let p = params(1, 2, 3, 1, 4, -5);
        let s = integrate_to(&p, 0.0, 1e-3).unwrap();
        assert_eq!((s.x, s.y, s.vx, s.vy), (0.0, 0.0, 4.0, -5.0));
    }
}

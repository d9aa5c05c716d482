//! Exp-polynomials: finite sums of `P(t) * exp(mu * t)` with exact rational
//! polynomial coefficients and exact rational modes `mu`.
//!
//! The class is closed under ring operations, differentiation, and
//! antidifferentiation, which is what makes the order-by-order series solves
//! in this crate exact. Canonical form: modes sorted ascending, every
//! polynomial trimmed (last coefficient nonzero), no zero terms stored, so
//! equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{MaclaurinCoeffs, Rat};

/// A finite sum over modes `mu` of `(c_0 + c_1 t + ...) * exp(mu * t)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    // mode -> polynomial coefficients in ascending degree, trimmed nonempty
    terms: BTreeMap<Rat, Vec<Rat>>,
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().is_some_and(Rat::is_zero) {
        v.pop();
    }
}

fn convolve(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    /// A constant (mode 0, degree 0).
    pub fn constant(c: Rat) -> Self {
        ExpPoly::term(Rat::zero(), vec![c])
    }

    /// A plain polynomial in `t` (mode 0), coefficients in ascending degree.
    pub fn poly(coeffs: Vec<Rat>) -> Self {
        ExpPoly::term(Rat::zero(), coeffs)
    }

    /// A single term `(coeffs polynomial) * exp(mode * t)`.
    pub fn term(mode: Rat, coeffs: Vec<Rat>) -> Self {
        let mut p = ExpPoly::zero();
        p.add_term(mode, coeffs);
        p
    }

    /// Assemble from `(mode, coeffs)` pairs; duplicate modes accumulate.
    pub fn from_terms<I: IntoIterator<Item = (Rat, Vec<Rat>)>>(terms: I) -> Self {
        let mut p = ExpPoly::zero();
        for (mode, coeffs) in terms {
            p.add_term(mode, coeffs);
        }
        p
    }

    fn add_term(&mut self, mode: Rat, mut coeffs: Vec<Rat>) {
        trim(&mut coeffs);
        if coeffs.is_empty() {
            return;
        }
        match self.terms.get_mut(&mode) {
            Some(existing) => {
                if existing.len() < coeffs.len() {
                    existing.resize(coeffs.len(), Rat::zero());
                }
                for (k, c) in coeffs.into_iter().enumerate() {
                    existing[k] = &existing[k] + &c;
                }
                trim(existing);
                if existing.is_empty() {
                    self.terms.remove(&mode);
                }
            }
            None => {
                self.terms.insert(mode, coeffs);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending-mode) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &[Rat])> {
        self.terms.iter().map(|(m, c)| (m, c.as_slice()))
    }

    pub fn modes(&self) -> impl Iterator<Item = &Rat> {
        self.terms.keys()
    }

    /// Polynomial attached to `mode`, empty slice when absent.
    pub fn coeffs_for(&self, mode: &Rat) -> &[Rat] {
        self.terms.get(mode).map_or(&[], Vec::as_slice)
    }

    pub fn scale(&self, s: &Rat) -> ExpPoly {
        if s.is_zero() {
            return ExpPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.iter().map(|ci| ci * s).collect()))
            .collect();
        ExpPoly { terms }
    }

    /// Exact derivative: `d/dt [t^k e^{mu t}] = (k t^{k-1} + mu t^k) e^{mu t}`.
    pub fn differentiate(&self) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (mode, coeffs) in &self.terms {
            let mut d = vec![Rat::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                if k > 0 {
                    d[k - 1] = &d[k - 1] + &(c * &Rat::from_int(k as i64));
                }
                d[k] = &d[k] + &(c * mode);
            }
            out.add_term(mode.clone(), d);
        }
        out
    }

    /// Exact antiderivative `F` with `differentiate(F) == self` and `F(0) = 0`.
    ///
    /// Mode 0 raises the polynomial degree; for `mu != 0` the polynomial part
    /// `Q` of `Q e^{mu t}` solves `Q' + mu Q = P` by back-substitution from the
    /// top degree, and the constant `-Q(0)` lands in mode 0.
    pub fn antiderivative(&self) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (mode, coeffs) in &self.terms {
            if mode.is_zero() {
                let mut int = vec![Rat::zero(); coeffs.len() + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    int[k + 1] = c / &Rat::from_int(k as i64 + 1);
                }
                out.add_term(Rat::zero(), int);
            } else {
                let deg = coeffs.len() - 1;
                let mut q = vec![Rat::zero(); coeffs.len()];
                for k in (0..=deg).rev() {
                    let carried = if k < deg {
                        &coeffs[k] - &(&q[k + 1] * &Rat::from_int(k as i64 + 1))
                    } else {
                        coeffs[k].clone()
                    };
                    q[k] = &carried / mode;
                }
                let q0 = q[0].clone();
                out.add_term(mode.clone(), q);
                out.add_term(Rat::zero(), vec![-q0]);
            }
        }
        out
    }

    /// Exact value at `t = 0`: the sum of constant coefficients.
    pub fn value_at_zero(&self) -> Rat {
        self.terms
            .values()
            .map(|c| c[0].clone())
            .fold(Rat::zero(), |acc, c| acc + c)
    }

    /// Float evaluation: Horner per polynomial, times `exp(mu t)`, summed in
    /// mode order. Coefficients are converted to `f64` here, never stored.
    pub fn evaluate(&self, t: f64) -> f64 {
        let mut total = 0.0;
        for (mode, coeffs) in &self.terms {
            let mut p = 0.0;
            for c in coeffs.iter().rev() {
                p = p * t + c.to_f64();
            }
            total += p * (mode.to_f64() * t).exp();
        }
        total
    }

    /// Exact Maclaurin coefficients through `t^order`:
    /// `[t^j] (t^k e^{mu t}) = mu^(j-k) / (j-k)!` for `j >= k`.
    pub fn maclaurin(&self, order: usize) -> MaclaurinCoeffs {
        let mut out = vec![Rat::zero(); order + 1];
        // inv_fact[i] = 1/i!
        let mut inv_fact = Vec::with_capacity(order + 1);
        let mut fact = BigInt::from(1);
        inv_fact.push(Rat::one());
        for i in 1..=order {
            fact *= BigInt::from(i);
            inv_fact.push(Rat::from_bigints(BigInt::from(1), fact.clone()));
        }
        for (mode, coeffs) in &self.terms {
            for (k, c) in coeffs.iter().enumerate() {
                if k > order || c.is_zero() {
                    continue;
                }
                let mut mode_pow = Rat::one();
                for j in k..=order {
                    let contrib = c * &mode_pow * &inv_fact[j - k];
                    out[j] = &out[j] + &contrib;
                    mode_pow = &mode_pow * mode;
                }
            }
        }
        MaclaurinCoeffs::new(out)
    }
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (mode, coeffs) in &rhs.terms {
            out.add_term(mode.clone(), coeffs.clone());
        }
        out
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        self + &(-rhs)
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        self.scale(&Rat::from_int(-1))
    }
}

impl Mul for &ExpPoly {
    type Output = ExpPoly;
    // modes add under multiplication: e^{m1 t} e^{m2 t} = e^{(m1+m2) t}
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1 + m2, convolve(c1, c2));
            }
        }
        out
    }
}

impl Add for ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: ExpPoly) -> ExpPoly {
        &self + &rhs
    }
}

impl Sub for ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: ExpPoly) -> ExpPoly {
        &self - &rhs
    }
}

impl Mul for ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: ExpPoly) -> ExpPoly {
        &self * &rhs
    }
}

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        -&self
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mode, coeffs) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "(")?;
            let mut inner_first = true;
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !inner_first {
                    write!(f, " + ")?;
                }
                inner_first = false;
                match k {
                    0 => write!(f, "{c}")?,
                    1 => write!(f, "{c}*t")?,
                    _ => write!(f, "{c}*t^{k}")?,
                }
            }
            write!(f, ")")?;
            if !mode.is_zero() {
                write!(f, "*exp({mode}*t)")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    mode: Rat,
    coeffs: Vec<Rat>,
}

impl Serialize for ExpPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr { mode: m.clone(), coeffs: c.clone() })
            .collect();
        reprs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExpPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let reprs = Vec::<TermRepr>::deserialize(deserializer)?;
        Ok(ExpPoly::from_terms(reprs.into_iter().map(|r| (r.mode, r.coeffs))))
    }
}

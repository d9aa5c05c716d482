//! Truncated Maclaurin series with exact rational coefficients.

use serde::{Deserialize, Serialize};

use super::Rat;

/// Coefficients of a truncated Maclaurin series: index `k` holds the
/// coefficient of `t^k`. The vector length is always `order + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MaclaurinCoeffs {
    coeffs: Vec<Rat>,
}

impl MaclaurinCoeffs {
    /// Wrap a coefficient vector. Panics if empty (order 0 still has one entry).
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "MaclaurinCoeffs::new: empty vector");
        MaclaurinCoeffs { coeffs }
    }

    /// The truncation order (largest represented power of `t`).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Re-truncate to a (smaller or equal) order.
    pub fn truncated(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(Rat::zero());
        }
        MaclaurinCoeffs { coeffs }
    }

    /// Largest `d` such that the coefficients of `t^0..t^d` agree with
    /// `other`; `None` when they already differ at `t^0`. Only orders present
    /// in both series are compared.
    pub fn agreement_order(&self, other: &Self) -> Option<usize> {
        let upto = self.order().min(other.order());
        let mut agreed = None;
        for k in 0..=upto {
            if self.coeff(k) == other.coeff(k) {
                agreed = Some(k);
            } else {
                break;
            }
        }
        agreed
    }

    /// Horner evaluation after per-coefficient conversion to `f64`.
    pub fn evaluate(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_f64();
        }
        acc
    }
}

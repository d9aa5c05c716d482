//! Padé approximants: rational functions built from exact Maclaurin
//! coefficients so that the expansion of `numer/denom` matches the input
//! series through order `m + n`.
//!
//! The matching system is solved in exact arithmetic (rows cleared to
//! integers, then Bareiss fraction-free elimination). Singular systems do not
//! fail outright: the minimal-degree solution is extracted from the
//! homogeneous system and returned inside a degeneracy report, together with
//! the orders it actually achieves.

mod fixtures;

pub use fixtures::{fixture, FixtureId};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{MaclaurinCoeffs, Rat};

/// A rational function with exact rational coefficients, denominator
/// normalized to constant term 1. Coefficient vectors are in ascending
/// degree and trimmed, so the stored degrees are the effective degrees.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn {
    numer: Vec<Rat>,
    denom: Vec<Rat>,
}

/// Evaluation hit a denominator zero.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("rational function pole at t = {t}")]
pub struct PoleError {
    pub t: f64,
}

/// What a singular matching system still admits.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyReport {
    /// The `[m/n]` that was requested.
    pub requested: (usize, usize),
    /// Effective degrees of the minimal-degree solution.
    pub effective: (usize, usize),
    /// Largest order through which the minimal solution matches the series.
    pub matched_order: usize,
    /// The minimal-degree solution itself.
    pub minimal: RationalFn,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PadeError {
    #[error("[{m}/{n}] needs {needed} series coefficients, got {got}")]
    InsufficientCoefficients { m: usize, n: usize, needed: usize, got: usize },
    #[error(
        "[{m}/{n}] system is degenerate; minimal solution has orders \
         [{em}/{en}] and matches through order {matched}",
        m = .0.requested.0, n = .0.requested.1,
        em = .0.effective.0, en = .0.effective.1,
        matched = .0.matched_order
    )]
    Degenerate(Box<DegeneracyReport>),
    #[error("denominator constant term is zero; cannot normalize")]
    UnnormalizableDenominator,
}

fn trim(v: &mut Vec<Rat>) {
    while v.len() > 1 && v.last().is_some_and(Rat::is_zero) {
        v.pop();
    }
}

impl RationalFn {
    /// Build from coefficient vectors, normalizing the denominator constant
    /// term to 1. Fails when that constant term is zero.
    pub fn new(numer: Vec<Rat>, denom: Vec<Rat>) -> Result<Self, PadeError> {
        let b0 = denom.first().cloned().unwrap_or_else(Rat::zero);
        if b0.is_zero() {
            return Err(PadeError::UnnormalizableDenominator);
        }
        let inv = b0.recip();
        let mut numer: Vec<Rat> = numer.iter().map(|c| c * &inv).collect();
        let mut denom: Vec<Rat> = denom.iter().map(|c| c * &inv).collect();
        if numer.is_empty() {
            numer.push(Rat::zero());
        }
        trim(&mut numer);
        trim(&mut denom);
        Ok(RationalFn { numer, denom })
    }

    pub fn numer(&self) -> &[Rat] {
        &self.numer
    }

    pub fn denom(&self) -> &[Rat] {
        &self.denom
    }

    /// `(numerator degree, denominator degree)` of the trimmed vectors.
    pub fn degrees(&self) -> (usize, usize) {
        (self.numer.len() - 1, self.denom.len() - 1)
    }

    /// Horner evaluation with per-coefficient `f64` conversion; reports a
    /// pole when the denominator magnitude drops below `1e-300`.
    pub fn eval(&self, t: f64) -> Result<f64, PoleError> {
        let horner = |v: &[Rat]| {
            let mut acc = 0.0;
            for c in v.iter().rev() {
                acc = acc * t + c.to_f64();
            }
            acc
        };
        let den = horner(&self.denom);
        if den.abs() < 1e-300 {
            return Err(PoleError { t });
        }
        Ok(horner(&self.numer) / den)
    }

    /// Exact Maclaurin expansion through `t^order` by series division.
    pub fn maclaurin(&self, order: usize) -> MaclaurinCoeffs {
        // denominator inverse as a power series; d0 = 1 after normalization
        let mut inv = vec![Rat::zero(); order + 1];
        inv[0] = Rat::one();
        for k in 1..=order {
            let mut acc = Rat::zero();
            for j in 1..=k.min(self.denom.len() - 1) {
                acc = acc + &self.denom[j] * &inv[k - j];
            }
            inv[k] = -acc;
        }
        let mut out = vec![Rat::zero(); order + 1];
        for (i, a) in self.numer.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in inv.iter().enumerate().take(order + 1 - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        MaclaurinCoeffs::new(out)
    }

    /// Same function? Compares by cross-multiplication, so representations
    /// with a common polynomial factor still count as equal.
    pub fn equivalent_to(&self, other: &RationalFn) -> bool {
        let cross = |a: &[Rat], b: &[Rat]| {
            let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    out[i + j] = &out[i + j] + &(ai * bj);
                }
            }
            trim(&mut out);
            out
        };
        cross(&self.numer, &other.denom) == cross(&other.numer, &self.denom)
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.numer, self.denom)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalFnRepr {
    numer: Vec<Rat>,
    denom: Vec<Rat>,
}

impl Serialize for RationalFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalFnRepr { numer: self.numer.clone(), denom: self.denom.clone() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RationalFnRepr::deserialize(deserializer)?;
        RationalFn::new(repr.numer, repr.denom).map_err(serde::de::Error::custom)
    }
}

/// Clear a rational row to integers by its denominators' lcm.
fn integer_row(row: &[Rat]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for r in row {
        l = l.lcm(r.denom());
    }
    row.iter().map(|r| r.numer() * (&l / r.denom())).collect()
}

/// Solve a square system exactly by Bareiss fraction-free elimination.
/// Returns `None` when the matrix is singular.
fn bareiss_solve(a: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    // augmented integer matrix, row-scaled
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut full: Vec<Rat> = row.to_vec();
            full.push(b.clone());
            integer_row(&full)
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                // exact integer division is the Bareiss invariant
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rat::from_bigints(m[i][n].clone(), BigInt::one());
        for j in i + 1..n {
            acc = acc - &Rat::from_bigints(m[i][j].clone(), BigInt::one()) * &x[j];
        }
        x[i] = &acc / &Rat::from_bigints(m[i][i].clone(), BigInt::one());
    }
    Some(x)
}

/// Reduced row echelon form in rational arithmetic; returns the pivot
/// column of each pivot row.
#[allow(clippy::needless_range_loop)] // rows are indexed against each other
fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for j in col..cols {
            m[row][j] = &m[row][j] * &inv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..cols {
                    m[i][j] = &m[i][j] - &(&f * &m[row][j]);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

fn series_coeff(c: &MaclaurinCoeffs, idx: i64) -> Rat {
    if idx < 0 {
        Rat::zero()
    } else {
        c.coeff(idx as usize)
    }
}

fn numerator_from_denominator(c: &MaclaurinCoeffs, b: &[Rat], m: usize) -> Vec<Rat> {
    (0..=m)
        .map(|i| {
            let mut acc = Rat::zero();
            for (j, bj) in b.iter().enumerate().take(i + 1) {
                acc = acc + bj * &c.coeff(i - j);
            }
            acc
        })
        .collect()
}

/// Construct the `[m/n]` Padé approximant of a series.
///
/// On success the result's expansion matches `c` through order `m + n`
/// exactly (verified internally). A singular matching system yields
/// [`PadeError::Degenerate`] carrying the minimal-degree solution.
pub fn build(c: &MaclaurinCoeffs, m: usize, n: usize) -> Result<RationalFn, PadeError> {
    let needed = m + n + 1;
    if c.coeffs().len() < needed {
        return Err(PadeError::InsufficientCoefficients {
            m,
            n,
            needed,
            got: c.coeffs().len(),
        });
    }

    if n > 0 {
        // sum_{j=1..n} c_{m+1+r-j} b_j = -c_{m+1+r}, r = 0..n-1
        let a: Vec<Vec<Rat>> = (0..n)
            .map(|r| {
                (1..=n)
                    .map(|j| series_coeff(c, (m + 1 + r) as i64 - j as i64))
                    .collect()
            })
            .collect();
        let rhs: Vec<Rat> = (0..n).map(|r| -c.coeff(m + 1 + r)).collect();
        match bareiss_solve(&a, &rhs) {
            Some(tail) => {
                let mut b = vec![Rat::one()];
                b.extend(tail);
                let numer = numerator_from_denominator(c, &b, m);
                let result = RationalFn::new(numer, b)?;
                let matched = result.maclaurin(m + n);
                let want = c.truncated(m + n);
                assert_eq!(
                    matched.coeffs(),
                    want.coeffs(),
                    "Padé matching condition violated; this is a bug"
                );
                Ok(result)
            }
            None => Err(PadeError::Degenerate(Box::new(minimal_solution(c, m, n)))),
        }
    } else {
        let numer: Vec<Rat> = (0..=m).map(|i| c.coeff(i)).collect();
        RationalFn::new(numer, vec![Rat::one()])
    }
}

/// Minimal-degree solution of the homogeneous matching system
/// `sum_{j=0..n} c_{k-j} b_j = 0` for `k = m+1 ..= m+n`.
fn minimal_solution(c: &MaclaurinCoeffs, m: usize, n: usize) -> DegeneracyReport {
    let mut h: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            (0..=n)
                .map(|j| series_coeff(c, (m + 1 + r) as i64 - j as i64))
                .collect()
        })
        .collect();
    let pivots = rref(&mut h);

    // First non-pivot column = lowest-degree admissible denominator; its
    // standard null vector is supported on columns 0..=j_free.
    let j_free = (0..=n)
        .find(|j| !pivots.contains(j))
        .expect("n+1 columns with at most n pivots always leave a free column");
    let mut b = vec![Rat::zero(); n + 1];
    b[j_free] = Rat::one();
    for (row, &p) in pivots.iter().enumerate() {
        if p < j_free {
            b[p] = -h[row][j_free].clone();
        }
    }

    let numer = numerator_from_denominator(c, &b, m);
    // strip the common power of t forced by an unnormalizable denominator
    let ord = |v: &[Rat]| v.iter().position(|x| !x.is_zero());
    let (numer, shift) = match (ord(&numer), ord(&b)) {
        (Some(a), Some(d)) => {
            let shift = a.min(d);
            (numer[shift..].to_vec(), shift)
        }
        (None, Some(d)) => (vec![Rat::zero()], d),
        _ => unreachable!("null vector is nonzero by construction"),
    };
    let denom: Vec<Rat> = b[shift..].to_vec();
    let minimal = RationalFn::new(numer, denom)
        .expect("reduced minimal denominator has nonzero constant term");

    let expansion = minimal.maclaurin(m + n);
    let matched_order = (0..=m + n)
        .take_while(|&k| expansion.coeff(k) == c.coeff(k))
        .count()
        .saturating_sub(1);
    DegeneracyReport {
        requested: (m, n),
        effective: minimal.degrees(),
        matched_order,
        minimal,
    }
}

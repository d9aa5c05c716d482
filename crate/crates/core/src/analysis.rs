//! Measurement harness: sample every method on a time grid, compute absolute
//! errors against the closed form, and locate the first grid time at which an
//! approximation leaves a tolerance band.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::ExpPoly;
use crate::exact::{self, ModelParams};
use crate::hpm;
use crate::oracle;
use crate::output::render_float;
use crate::pade::{self, FixtureId, PadeError, RationalFn};

/// Which trajectory component a method produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    X,
    Y,
    Vx,
    Vy,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Quantity::X => "x",
            Quantity::Y => "y",
            Quantity::Vx => "vx",
            Quantity::Vy => "vy",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" => Ok(Quantity::X),
            "y" => Ok(Quantity::Y),
            "vx" => Ok(Quantity::Vx),
            "vy" => Ok(Quantity::Vy),
            other => Err(format!("unknown quantity {other:?}: expected x, y, vx, or vy")),
        }
    }
}

/// A way of producing trajectory values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MethodKind {
    /// The closed-form solution itself.
    Exact,
    /// Partial sum of the homotopy expansion through order `N`.
    Hpm(usize),
    /// One of the transcribed reference approximants.
    PadeFixture(FixtureId),
    /// `[m/n]` approximant built from the series of the order-`source_order`
    /// homotopy partial sum.
    PadeBuilt { m: usize, n: usize, source_order: usize },
    /// Fixed-step RK4 integration.
    Rk4 { h: f64 },
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodKind::Exact => write!(f, "exact"),
            MethodKind::Hpm(n) => write!(f, "hpm:{n}"),
            MethodKind::PadeFixture(id) => write!(f, "pade-fixture:{id}"),
            MethodKind::PadeBuilt { m, n, source_order } => {
                write!(f, "pade:{m}:{n}:hpm{source_order}")
            }
            MethodKind::Rk4 { h } => write!(f, "rk4:{h}"),
        }
    }
}

impl FromStr for MethodKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |s: &str| {
            format!(
                "unknown method {s:?}: expected exact, hpm:N, rk4:H, \
                 pade-fixture:vx88|vy1010, or pade:M:N:hpmK"
            )
        };
        if s == "exact" {
            return Ok(MethodKind::Exact);
        }
        if let Some(n) = s.strip_prefix("hpm:") {
            let n = n.parse().map_err(|_| err(s))?;
            return Ok(MethodKind::Hpm(n));
        }
        if let Some(h) = s.strip_prefix("rk4:") {
            let h: f64 = h.parse().map_err(|_| err(s))?;
            return Ok(MethodKind::Rk4 { h });
        }
        if let Some(id) = s.strip_prefix("pade-fixture:") {
            let id = id.parse().map_err(|_| err(s))?;
            return Ok(MethodKind::PadeFixture(id));
        }
        if let Some(rest) = s.strip_prefix("pade:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if let [m, n, src] = parts[..] {
                let m = m.parse().map_err(|_| err(s))?;
                let n = n.parse().map_err(|_| err(s))?;
                let source_order =
                    src.strip_prefix("hpm").and_then(|k| k.parse().ok()).ok_or_else(|| err(s))?;
                return Ok(MethodKind::PadeBuilt { m, n, source_order });
            }
        }
        Err(err(s))
    }
}

/// A method paired with the quantity it is sampled on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MethodSpec {
    pub kind: MethodKind,
    pub quantity: Quantity,
}

impl MethodSpec {
    pub fn new(kind: MethodKind, quantity: Quantity) -> Self {
        MethodSpec { kind, quantity }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("time grid must be strictly increasing and nonnegative")]
    BadGrid,
    #[error("tolerance and grid step must be positive, got tol = {tol}, dt = {dt}")]
    BadThresholds { tol: f64, dt: f64 },
    #[error("fixture {fixture} produces quantity {expected}, not {requested}")]
    QuantityMismatch { fixture: FixtureId, expected: Quantity, requested: Quantity },
    #[error("rk4 step must be positive, got {h}")]
    BadRk4Step { h: f64 },
    #[error(transparent)]
    Pade(#[from] PadeError),
}

/// One sampled cell: `None` marks a flagged missing value (pole or diverged
/// integration) rather than aborting the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub value: Option<f64>,
    pub abs_error: Option<f64>,
}

/// All methods sampled at one grid time, in method order.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub t: f64,
    pub cells: Vec<Cell>,
}

enum Evaluator {
    Exact(Quantity),
    Series(ExpPoly),
    Rational(RationalFn),
    Rk4 { h: f64, quantity: Quantity },
}

fn exact_value(p: &ModelParams, q: Quantity, t: f64) -> f64 {
    match q {
        Quantity::X => exact::position(p, t).0,
        Quantity::Y => exact::position(p, t).1,
        Quantity::Vx => exact::velocity(p, t).0,
        Quantity::Vy => exact::velocity(p, t).1,
    }
}

fn hpm_series(p: &ModelParams, order: usize, q: Quantity) -> ExpPoly {
    let e = hpm::expand(p, order);
    let (sx, sy) = e.partial_sum(order).expect("order just computed");
    match q {
        Quantity::X => sx,
        Quantity::Y => sy,
        Quantity::Vx => sx.differentiate(),
        Quantity::Vy => sy.differentiate(),
    }
}

fn make_evaluator(p: &ModelParams, spec: &MethodSpec) -> Result<Evaluator, AnalysisError> {
    match spec.kind {
        MethodKind::Exact => Ok(Evaluator::Exact(spec.quantity)),
        MethodKind::Hpm(n) => Ok(Evaluator::Series(hpm_series(p, n, spec.quantity))),
        MethodKind::PadeFixture(id) => {
            let expected = match id {
                FixtureId::Vx88 => Quantity::Vx,
                FixtureId::Vy1010 => Quantity::Vy,
            };
            if spec.quantity != expected {
                return Err(AnalysisError::QuantityMismatch {
                    fixture: id,
                    expected,
                    requested: spec.quantity,
                });
            }
            Ok(Evaluator::Rational(pade::fixture(id)))
        }
        MethodKind::PadeBuilt { m, n, source_order } => {
            let series = hpm_series(p, source_order, spec.quantity).maclaurin(m + n);
            match pade::build(&series, m, n) {
                Ok(f) => Ok(Evaluator::Rational(f)),
                // a degenerate table entry still has a best rational answer
                Err(PadeError::Degenerate(report)) => Ok(Evaluator::Rational(report.minimal)),
                Err(e) => Err(e.into()),
            }
        }
        MethodKind::Rk4 { h } => {
            if !(h > 0.0 && h.is_finite()) {
                return Err(AnalysisError::BadRk4Step { h });
            }
            Ok(Evaluator::Rk4 { h, quantity: spec.quantity })
        }
    }
}

impl Evaluator {
    fn eval(&self, p: &ModelParams, t: f64) -> Option<f64> {
        match self {
            Evaluator::Exact(q) => Some(exact_value(p, *q, t)),
            Evaluator::Series(poly) => Some(poly.evaluate(t)),
            Evaluator::Rational(f) => f.eval(t).ok(),
            Evaluator::Rk4 { h, quantity } => {
                let s = oracle::integrate_to(p, t, *h).ok()?;
                Some(match quantity {
                    Quantity::X => s.x,
                    Quantity::Y => s.y,
                    Quantity::Vx => s.vx,
                    Quantity::Vy => s.vy,
                })
            }
        }
    }
}

/// Sample every method at every grid time. Errors are absolute deviations
/// from the closed form of the method's own quantity; the closed form
/// compared against itself gives exactly zero.
pub fn sweep(
    p: &ModelParams,
    methods: &[MethodSpec],
    t_grid: &[f64],
) -> Result<Vec<ComparisonRow>, AnalysisError> {
    let increasing = t_grid.windows(2).all(|w| w[0] < w[1]);
    if !increasing || t_grid.first().is_some_and(|&t| t < 0.0) {
        return Err(AnalysisError::BadGrid);
    }
    let evaluators: Vec<Evaluator> =
        methods.iter().map(|m| make_evaluator(p, m)).collect::<Result<_, _>>()?;
    let rows = t_grid
        .iter()
        .map(|&t| {
            let cells = evaluators
                .iter()
                .zip(methods)
                .map(|(e, spec)| {
                    let reference = exact_value(p, spec.quantity, t);
                    let value = e.eval(p, t);
                    Cell { value, abs_error: value.map(|v| (v - reference).abs()) }
                })
                .collect();
            ComparisonRow { t, cells }
        })
        .collect();
    Ok(rows)
}

/// First grid time `t* = k dt <= t_max` at which the method's absolute error
/// exceeds `tol`; `None` when the band is never left. A flagged missing
/// value (pole, diverged integration) counts as exceeding.
pub fn divergence_time(
    p: &ModelParams,
    spec: &MethodSpec,
    tol: f64,
    t_max: f64,
    dt: f64,
) -> Result<Option<f64>, AnalysisError> {
    if !(tol > 0.0 && dt > 0.0) {
        return Err(AnalysisError::BadThresholds { tol, dt });
    }
    let evaluator = make_evaluator(p, spec)?;
    let mut k = 0u64;
    loop {
        let t = k as f64 * dt;
        if t > t_max * (1.0 + 1e-12) {
            return Ok(None);
        }
        let reference = exact_value(p, spec.quantity, t);
        let exceeded = match evaluator.eval(p, t) {
            Some(v) => (v - reference).abs() > tol,
            None => true,
        };
        if exceeded {
            return Ok(Some(t));
        }
        k += 1;
    }
}

/// Machine-readable record of one divergence-time measurement, with every
/// threshold that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceSummary {
    pub method: String,
    pub quantity: String,
    pub tol: f64,
    pub dt: f64,
    pub t_max: f64,
    pub t_star: Option<f64>,
}

impl DivergenceSummary {
    pub fn measure(
        p: &ModelParams,
        spec: &MethodSpec,
        tol: f64,
        t_max: f64,
        dt: f64,
    ) -> Result<Self, AnalysisError> {
        let t_star = divergence_time(p, spec, tol, t_max, dt)?;
        Ok(DivergenceSummary {
            method: spec.kind.to_string(),
            quantity: spec.quantity.to_string(),
            tol,
            dt,
            t_max,
            t_star,
        })
    }
}

/// Long-format CSV: header `t,method,quantity,value,abs_error`, one line per
/// (grid time, method). Missing cells render as empty fields.
pub fn rows_to_csv(methods: &[MethodSpec], rows: &[ComparisonRow], digits: usize) -> String {
    let mut out = String::from("t,method,quantity,value,abs_error\n");
    for row in rows {
        for (spec, cell) in methods.iter().zip(&row.cells) {
            let fmt_opt = |v: Option<f64>| v.map_or_else(String::new, |v| render_float(v, digits));
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                render_float(row.t, digits),
                spec.kind,
                spec.quantity,
                fmt_opt(cell.value),
                fmt_opt(cell.abs_error),
            ));
        }
    }
    out
}

/// The same sweep as JSON: an array of `{t, method, quantity, value,
/// abs_error}` records in row-major order.
pub fn rows_to_json(methods: &[MethodSpec], rows: &[ComparisonRow]) -> serde_json::Value {
    #[derive(Serialize)]
    struct Record {
        t: f64,
        method: String,
        quantity: String,
        value: Option<f64>,
        abs_error: Option<f64>,
    }
    let records: Vec<Record> = rows
        .iter()
        .flat_map(|row| {
            methods.iter().zip(&row.cells).map(move |(spec, cell)| Record {
                t: row.t,
                method: spec.kind.to_string(),
                quantity: spec.quantity.to_string(),
                value: cell.value,
                abs_error: cell.abs_error,
            })
        })
        .collect();
    serde_json::to_value(records).expect("plain records always serialize")
}

//! `couette`: exact trajectories, regenerated homotopy series, Padé
//! approximants, and method comparisons for a spherical particle in plane
//! Couette flow, with CSV/JSON output.
//!
//! Exit codes: 0 success, 1 usage error, 2 parameter-domain error
//! (for example `B <= 0`), 3 pole or divergence while evaluating.

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use couette_core::algebra::{ExpPoly, MaclaurinCoeffs, Rat};
use couette_core::analysis::{self, MethodKind, MethodSpec, Quantity};
use couette_core::exact::{self, ModelParams};
use couette_core::hpm;
use couette_core::oracle;
use couette_core::output;
use couette_core::pade::{self, FixtureId, PadeError};

#[derive(Parser)]
#[command(
    name = "couette",
    version,
    about = "Spherical particle in plane Couette flow: exact solution, \
             homotopy series, Padé approximants, and comparisons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the closed-form trajectory on a time grid
    Exact {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        io: OutputArgs,
        /// Final time
        #[arg(long = "t-max", default_value_t = 10.0)]
        t_max: f64,
        /// Grid step
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
    },
    /// Integrate the same system with fixed-step RK4
    Oracle {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        io: OutputArgs,
        /// Final time
        #[arg(long = "t-max", default_value_t = 10.0)]
        t_max: f64,
        /// Integration step
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
    },
    /// Emit homotopy-expansion terms, partial sums, or their series
    Hpm {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        io: OutputArgs,
        /// Highest expansion order
        #[arg(long, default_value_t = 4)]
        orders: usize,
        /// What to emit
        #[arg(long, value_enum, default_value_t = HpmEmit::Terms)]
        emit: HpmEmit,
        /// Truncation order for --emit maclaurin
        #[arg(long = "maclaurin-order", default_value_t = 16)]
        maclaurin_order: usize,
    },
    /// Build a Padé approximant, or emit/evaluate a reference fixture
    Pade {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        io: OutputArgs,
        /// Numerator degree
        #[arg(long, conflicts_with = "fixture", requires = "n", requires = "source")]
        m: Option<usize>,
        /// Denominator degree
        #[arg(long, conflicts_with = "fixture")]
        n: Option<usize>,
        /// Series source: `exact` or `hpm:N`
        #[arg(long, conflicts_with = "fixture")]
        source: Option<String>,
        /// Quantity the approximant represents
        #[arg(long, value_parser = parse_quantity, default_value = "vx")]
        quantity: Quantity,
        /// Use a transcribed reference approximant instead of building one
        #[arg(long, value_parser = parse_fixture)]
        fixture: Option<FixtureId>,
        /// Also evaluate the approximant at this time
        #[arg(long = "eval-at", allow_hyphen_values = true)]
        eval_at: Option<f64>,
    },
    /// Sample several methods on a grid with errors against the closed form
    Compare {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        io: OutputArgs,
        /// Method to include (repeatable): exact, hpm:N, rk4:H,
        /// pade-fixture:vx88|vy1010, pade:M:N:hpmK
        #[arg(long = "method", required = true, value_parser = parse_method)]
        methods: Vec<MethodKind>,
        /// Quantity to compare on
        #[arg(long, value_parser = parse_quantity, default_value = "y")]
        quantity: Quantity,
        /// Final grid time
        #[arg(long = "t-max", default_value_t = 10.0)]
        t_max: f64,
        /// Grid step
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
    },
    /// First grid time at which a method's error exceeds a tolerance
    Divergence {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        io: OutputArgs,
        /// Method to measure
        #[arg(long, value_parser = parse_method)]
        method: MethodKind,
        /// Quantity to measure on
        #[arg(long, value_parser = parse_quantity, default_value = "y")]
        quantity: Quantity,
        /// Error tolerance
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
        /// Grid step
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        /// Search horizon
        #[arg(long = "t-max", default_value_t = 20.0)]
        t_max: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HpmEmit {
    Terms,
    Sums,
    Maclaurin,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Model coefficients as exact rationals (`p`, `p/q`, or finite decimals).
#[derive(Args)]
struct ParamArgs {
    /// Lift coupling A
    #[arg(long = "A", value_parser = parse_rat, default_value = "1", allow_hyphen_values = true)]
    a: Rat,
    /// Drag coefficient B (must be positive)
    #[arg(long = "B", value_parser = parse_rat, default_value = "1", allow_hyphen_values = true)]
    b: Rat,
    /// Base coupling C; stores Cbar = C + A
    #[arg(long = "C", value_parser = parse_rat, allow_hyphen_values = true)]
    c: Option<Rat>,
    /// Coupling Cbar, overriding the C + A default
    #[arg(long = "Cbar", value_parser = parse_rat, allow_hyphen_values = true)]
    cbar: Option<Rat>,
    /// Shear rate alpha
    #[arg(long, value_parser = parse_rat, default_value = "1", allow_hyphen_values = true)]
    alpha: Rat,
    /// Initial x-velocity
    #[arg(long, value_parser = parse_rat, default_value = "1", allow_hyphen_values = true)]
    u: Rat,
    /// Initial y-velocity
    #[arg(long, value_parser = parse_rat, default_value = "1", allow_hyphen_values = true)]
    v: Rat,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; `-` for stdout
    #[arg(long, default_value = "-")]
    output: String,
    /// Output format where both are supported
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    Rat::from_str(s).map_err(|e| e.to_string())
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    s.parse()
}

fn parse_method(s: &str) -> Result<MethodKind, String> {
    s.parse()
}

fn parse_fixture(s: &str) -> Result<FixtureId, String> {
    s.parse()
}

enum CliError {
    Usage(String),
    Domain(String),
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Numeric(m) => m,
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

impl ParamArgs {
    /// Resolve the effective coupling and build the validated parameter set,
    /// noting on stderr which coupling reading is in effect.
    fn resolve(&self) -> Result<ModelParams, CliError> {
        let (cbar, origin) = match (&self.cbar, &self.c) {
            (Some(cbar), _) => (cbar.clone(), "set explicitly via --Cbar"),
            (None, Some(c)) => (c + &self.a, "derived as C + A from --C"),
            (None, None) => (Rat::one(), "default"),
        };
        let p = ModelParams::new(
            self.a.clone(),
            self.b.clone(),
            cbar,
            self.alpha.clone(),
            self.u.clone(),
            self.v.clone(),
        )
        .map_err(domain)?;
        eprintln!("note: coupling Cbar = {} ({origin})", p.cbar());
        Ok(p)
    }
}

fn precision_digits() -> Result<usize, CliError> {
    match std::env::var("COUETTE_PRECISION_DIGITS") {
        Ok(s) => s.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!(
                "COUETTE_PRECISION_DIGITS must be a positive integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(17),
    }
}

fn write_output(io: &OutputArgs, content: &str) -> Result<(), CliError> {
    if io.output == "-" {
        print!("{content}");
        Ok(())
    } else {
        fs::write(&io.output, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", io.output)))
    }
}

fn json_doc(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn params_json(p: &ModelParams) -> serde_json::Value {
    serde_json::json!({
        "A": p.a().to_fraction_string(),
        "B": p.b().to_fraction_string(),
        "Cbar": p.cbar().to_fraction_string(),
        "alpha": p.alpha().to_fraction_string(),
        "u": p.u().to_fraction_string(),
        "v": p.v().to_fraction_string(),
    })
}

fn trajectory_output(
    io: &OutputArgs,
    samples: &[exact::TrajectorySample],
    method: &str,
) -> Result<(), CliError> {
    let digits = precision_digits()?;
    let content = match io.format {
        Format::Csv => output::trajectory_csv(samples, method, digits),
        Format::Json => json_doc(&output::trajectory_json(samples, method)),
    };
    write_output(io, &content)
}

fn check_grid(t_max: f64, dt: f64) -> Result<(), CliError> {
    if !(t_max > 0.0 && dt > 0.0 && t_max.is_finite() && dt.is_finite()) {
        return Err(CliError::Domain(format!(
            "need t-max > 0 and dt > 0, got t-max = {t_max}, dt = {dt}"
        )));
    }
    Ok(())
}

fn grid(t_max: f64, dt: f64) -> Vec<f64> {
    let mut g = Vec::new();
    let mut k = 0u64;
    loop {
        let t = k as f64 * dt;
        if t > t_max * (1.0 + 1e-12) {
            return g;
        }
        g.push(t);
        k += 1;
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Exact { params, io, t_max, dt } => {
            let p = params.resolve()?;
            check_grid(t_max, dt)?;
            let samples = exact::sample_trajectory(&p, t_max, dt);
            trajectory_output(&io, &samples, "exact")
        }
        Command::Oracle { params, io, t_max, h } => {
            let p = params.resolve()?;
            check_grid(t_max, h)?;
            let samples = oracle::integrate(&p, t_max, h).map_err(|e| match e {
                oracle::OracleError::BadStep { .. } => domain(e),
                oracle::OracleError::Divergence { .. } => CliError::Numeric(e.to_string()),
            })?;
            trajectory_output(&io, &samples, "rk4")
        }
        Command::Hpm { params, io, orders, emit, maclaurin_order } => {
            let p = params.resolve()?;
            let expansion = hpm::expand(&p, orders);
            let doc = match emit {
                HpmEmit::Terms => {
                    let terms: Vec<serde_json::Value> = expansion
                        .orders()
                        .iter()
                        .enumerate()
                        .map(|(n, (x, y))| {
                            serde_json::json!({
                                "n": n,
                                "x": serde_json::to_value(x).unwrap(),
                                "y": serde_json::to_value(y).unwrap(),
                            })
                        })
                        .collect();
                    serde_json::json!({
                        "params": params_json(&p),
                        "orders": terms,
                    })
                }
                HpmEmit::Sums => {
                    let (x, y) = expansion.partial_sum(orders).expect("order just computed");
                    serde_json::json!({
                        "params": params_json(&p),
                        "N": orders,
                        "x": serde_json::to_value(&x).unwrap(),
                        "y": serde_json::to_value(&y).unwrap(),
                    })
                }
                HpmEmit::Maclaurin => {
                    let (x, y) = expansion.partial_sum(orders).expect("order just computed");
                    serde_json::json!({
                        "params": params_json(&p),
                        "N": orders,
                        "truncation_order": maclaurin_order,
                        "x": serde_json::to_value(x.maclaurin(maclaurin_order)).unwrap(),
                        "y": serde_json::to_value(y.maclaurin(maclaurin_order)).unwrap(),
                    })
                }
            };
            write_output(&io, &json_doc(&doc))
        }
        Command::Pade { params, io, m, n, source, quantity, fixture, eval_at } => {
            let p = params.resolve()?;
            let mut doc;
            let function;
            if let Some(id) = fixture {
                function = pade::fixture(id);
                doc = serde_json::json!({
                    "fixture": id.to_string(),
                    "quantity": match id {
                        FixtureId::Vx88 => "vx",
                        FixtureId::Vy1010 => "vy",
                    },
                    "fn": serde_json::to_value(&function).unwrap(),
                });
            } else {
                let (Some(m), Some(n), Some(source)) = (m, n, source) else {
                    return Err(CliError::Usage(
                        "either --fixture or all of --m, --n, --source are required".into(),
                    ));
                };
                let series = source_series(&p, &source, quantity, m + n)?;
                match pade::build(&series, m, n) {
                    Ok(f) => {
                        doc = serde_json::json!({
                            "m": m,
                            "n": n,
                            "source": source,
                            "quantity": quantity.to_string(),
                            "degenerate": false,
                            "fn": serde_json::to_value(&f).unwrap(),
                        });
                        function = f;
                    }
                    Err(PadeError::Degenerate(report)) => {
                        doc = serde_json::json!({
                            "m": m,
                            "n": n,
                            "source": source,
                            "quantity": quantity.to_string(),
                            "degenerate": true,
                            "effective": [report.effective.0, report.effective.1],
                            "matched_order": report.matched_order,
                            "fn": serde_json::to_value(&report.minimal).unwrap(),
                        });
                        function = report.minimal;
                    }
                    Err(e) => return Err(domain(e)),
                }
            }
            if let Some(t) = eval_at {
                let value = function.eval(t).map_err(|e| CliError::Numeric(e.to_string()))?;
                doc["eval"] = serde_json::json!({ "t": t, "value": value });
            }
            write_output(&io, &json_doc(&doc))
        }
        Command::Compare { params, io, methods, quantity, t_max, dt } => {
            let p = params.resolve()?;
            check_grid(t_max, dt)?;
            let specs: Vec<MethodSpec> =
                methods.iter().map(|&kind| MethodSpec::new(kind, quantity)).collect();
            let rows = analysis::sweep(&p, &specs, &grid(t_max, dt)).map_err(domain)?;
            let content = match io.format {
                Format::Csv => analysis::rows_to_csv(&specs, &rows, precision_digits()?),
                Format::Json => json_doc(&analysis::rows_to_json(&specs, &rows)),
            };
            write_output(&io, &content)
        }
        Command::Divergence { params, io, method, quantity, tol, dt, t_max } => {
            let p = params.resolve()?;
            let spec = MethodSpec::new(method, quantity);
            let summary = analysis::DivergenceSummary::measure(&p, &spec, tol, t_max, dt)
                .map_err(domain)?;
            let mut doc = serde_json::to_value(&summary).expect("summary serializes");
            doc["params"] = params_json(&p);
            write_output(&io, &json_doc(&doc))
        }
    }
}

/// Maclaurin coefficients (through `t^order`) of the requested quantity from
/// `exact` or `hpm:N`.
fn source_series(
    p: &ModelParams,
    source: &str,
    quantity: Quantity,
    order: usize,
) -> Result<MaclaurinCoeffs, CliError> {
    if source == "exact" {
        let (x, y) = exact::maclaurin_position(p, order);
        let (vx, vy) = exact::maclaurin_velocity(p, order);
        return Ok(match quantity {
            Quantity::X => x,
            Quantity::Y => y,
            Quantity::Vx => vx,
            Quantity::Vy => vy,
        });
    }
    if let Some(n) = source.strip_prefix("hpm:") {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Usage(format!("bad source {source:?}: expected hpm:N")))?;
        let expansion = hpm::expand(p, n);
        let (sx, sy) = expansion.partial_sum(n).expect("order just computed");
        let poly: ExpPoly = match quantity {
            Quantity::X => sx,
            Quantity::Y => sy,
            Quantity::Vx => sx.differentiate(),
            Quantity::Vy => sy.differentiate(),
        };
        return Ok(poly.maclaurin(order));
    }
    Err(CliError::Usage(format!(
        "unknown series source {source:?}: expected exact or hpm:N"
    )))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

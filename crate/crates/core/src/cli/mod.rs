//! The `dfrac` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 numerical non-convergence. The environment variable `DFRAC_TOL`
//! overrides the default fixed-point tolerance.

pub mod output;

use std::ffi::OsString;
use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gamma::{falling_factorial, falling_factorial_real, GridValue, Order};
use crate::green::{
    diag_increment_closed_form, diag_increment_factor, green_diag_max_exhaustive, green_kernel, green_max_closed_form,
    row_abscissa, sign_sigma, solve_homogeneous_fixed_point, solve_linear_bvp_direct, solve_linear_bvp_green, BvpProblem,
    FixedPointOptions, FixedPointOutcome, GreenParams, Nonlinearity,
};
use crate::lyapunov::{
    bound_sweep, check_inequality, lyapunov_bound, perron_smallest_lambda, smallest_lambda_bisection, SweepStatus,
};
use crate::verify::{self, Level};
use output::{num, nums, Cell, Envelope, Obj, Table};

pub const TOL_ENV: &str = "DFRAC_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "dfrac", version, about = "Discrete fractional calculus, Green's functions and Lyapunov-type bounds")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Falling factorial t^(nu); abscissae as "m,n" (m·alpha + n) or plain reals.
    Ffact {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long)]
        alpha: f64,
    },
    /// Tabulate G(t, s) over t = alpha-2..alpha+b, s = 0..b.
    Green {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: u32,
    },
    /// Closed-form maximum of G(s+alpha-2, s) against the exhaustive scan.
    GreenMax {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: u32,
    },
    /// The constant C(alpha, b) of the Lyapunov-type inequality.
    Bound {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: u32,
    },
    /// Solve the linear problem (direct and Green routes) or, with --f, the nonlinear fixed point.
    Solve {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: u32,
        /// "ones", a comma list, or @file.csv
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        /// linear | pow:p | exp | @table.csv
        #[arg(long)]
        f: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Solve pow:p through its homogeneity instead of plain damped Picard.
        #[arg(long)]
        homogeneous: bool,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 0.5)]
        omega: f64,
    },
    /// Smallest lambda admitting a nontrivial solution for f(y) = y.
    Eigen {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: u32,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Evaluate the inequality for a candidate solution y (b+3 samples on alpha-2..alpha+b).
    Check {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: u32,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value = "linear")]
        f: String,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Bound pipeline over a grid of (alpha, b) with h = 1.
    Sweep {
        #[arg(long, default_value = "1.1,1.25,1.5,1.75,1.9")]
        alphas: String,
        /// Comma list or inclusive range "lo..hi".
        #[arg(long, default_value = "1..10")]
        bs: String,
    },
    /// Run the invariant suite; exit 0 when every check passes, 1 otherwise.
    Verify {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    command: &'static str,
    params: Obj,
    warnings: Vec<String>,
    errors: Vec<String>,
}

impl Ctx {
    fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params = std::mem::take(&mut self.params).with(key, value);
    }

    fn fparam(&mut self, key: &str, x: f64) {
        self.param(key, num(x));
    }
}

struct Done {
    results: Value,
    table: Table,
    code: i32,
}

fn done(results: impl Into<Value>, table: Table) -> Result<Done> {
    Ok(Done { results: results.into(), table, code: 0 })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence { .. } => 3,
        _ => 2,
    }
}

/// Parse arguments (including the program name) and run one command.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };

    let mut ctx = Ctx { command: command_name(&cli.command), params: Obj::new(), warnings: Vec::new(), errors: Vec::new() };
    ctx.param(
        "format",
        match cli.format {
            Format::Json => "json",
            Format::Csv => "csv",
        },
    );
    let outcome = dispatch(&cli.command, &mut ctx);
    let (results, table, code) = match outcome {
        Ok(d) => (d.results, Some(d.table), d.code),
        Err(e) => {
            ctx.errors.push(e.to_string());
            (Value::Null, None, exit_code(&e))
        }
    };

    let mut stderr: String = ctx.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    stderr.extend(ctx.errors.iter().map(|e| format!("error: {e}\n")));
    let stdout = match cli.format {
        Format::Json => Envelope {
            command: ctx.command.to_string(),
            params: ctx.params,
            sign_sigma: sign_sigma(),
            results,
            warnings: ctx.warnings,
            errors: ctx.errors,
        }
        .to_json(),
        Format::Csv => table.map(|t| t.to_csv()).unwrap_or_default(),
    };
    CliOutput { code, stdout, stderr }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ffact { .. } => "ffact",
        Command::Green { .. } => "green",
        Command::GreenMax { .. } => "green-max",
        Command::Bound { .. } => "bound",
        Command::Solve { .. } => "solve",
        Command::Eigen { .. } => "eigen",
        Command::Check { .. } => "check",
        Command::Sweep { .. } => "sweep",
        Command::Verify { .. } => "verify",
    }
}

fn dispatch(command: &Command, ctx: &mut Ctx) -> Result<Done> {
    match command {
        Command::Ffact { t, nu, alpha } => cmd_ffact(ctx, t, nu, *alpha),
        Command::Green { alpha, b } => cmd_green(ctx, *alpha, *b),
        Command::GreenMax { alpha, b } => cmd_green_max(ctx, *alpha, *b),
        Command::Bound { alpha, b } => cmd_bound(ctx, *alpha, *b),
        Command::Solve { alpha, b, h, f, lambda, homogeneous, tol, max_iter, omega } => {
            let opts = SolveOpts { f: f.as_deref(), lambda: *lambda, homogeneous: *homogeneous, tol: *tol, max_iter: *max_iter, omega: *omega };
            cmd_solve(ctx, *alpha, *b, h, opts)
        }
        Command::Eigen { alpha, b, h } => cmd_eigen(ctx, *alpha, *b, h),
        Command::Check { alpha, b, h, f, lambda, y } => cmd_check(ctx, *alpha, *b, h, f, *lambda, y),
        Command::Sweep { alphas, bs } => cmd_sweep(ctx, alphas, bs),
        Command::Verify { full, .. } => cmd_verify(ctx, if *full { Level::Full } else { Level::Quick }),
    }
}

enum Point {
    Exact(GridValue),
    Real(f64),
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn parse_point(text: &str) -> Result<Point> {
    match text.split_once(',') {
        Some((m, n)) => {
            let m = m.trim().parse().map_err(|_| usage(format!("bad alpha multiple in {text:?}")))?;
            let n = n.trim().parse().map_err(|_| usage(format!("bad integer offset in {text:?}")))?;
            Ok(Point::Exact(GridValue::new(m, n)))
        }
        None => text.trim().parse().map(Point::Real).map_err(|_| usage(format!("expected \"m,n\" or a real, got {text:?}"))),
    }
}

fn read_file(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
}

/// Numeric CSV records; a first record that does not parse is taken as a header.
fn read_numeric_csv(path: &str) -> Result<Vec<Vec<f64>>> {
    let text = read_file(path)?;
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| usage(format!("{path}: {e}")))?;
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().filter(|f| !f.is_empty()).map(str::parse).collect();
        match parsed {
            Ok(v) if !v.is_empty() => rows.push(v),
            Ok(_) => {}
            Err(_) if i == 0 => {}
            Err(_) => return Err(usage(format!("{path}: non-numeric record {}", i + 1))),
        }
    }
    Ok(rows)
}

fn parse_samples(text: &str, expected: usize, what: &str) -> Result<Vec<f64>> {
    let values: Vec<f64> = if text == "ones" {
        vec![1.0; expected]
    } else if let Some(path) = text.strip_prefix('@') {
        read_numeric_csv(path)?.into_iter().flatten().collect()
    } else {
        text.split(',')
            .map(|v| v.trim().parse().map_err(|_| usage(format!("bad number {v:?} in --{what}"))))
            .collect::<Result<_>>()?
    };
    if values.len() != expected {
        return Err(usage(format!("--{what} needs {expected} values, got {}", values.len())));
    }
    Ok(values)
}

fn parse_nonlinearity(text: &str) -> Result<Nonlinearity> {
    match text.strip_prefix('@') {
        Some(path) => {
            let knots = read_numeric_csv(path)?
                .into_iter()
                .map(|r| match r.as_slice() {
                    [x, y] => Ok((*x, *y)),
                    _ => Err(usage(format!("{path}: table rows need two columns"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Nonlinearity::table(knots)
        }
        None => Nonlinearity::parse(text),
    }
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    text.split(',').map(|v| v.trim().parse().map_err(|_| usage(format!("bad number {v:?}")))).collect()
}

fn parse_u32_list(text: &str) -> Result<Vec<u32>> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| usage(format!("bad range {text:?}")))?;
        let hi: u32 = hi.trim().parse().map_err(|_| usage(format!("bad range {text:?}")))?;
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(|v| v.trim().parse().map_err(|_| usage(format!("bad integer {v:?}")))).collect()
}

fn default_tol() -> Result<f64> {
    match std::env::var(TOL_ENV) {
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(t) if t > 0.0 => Ok(t),
            _ => Err(usage(format!("{TOL_ENV}={v:?} is not a positive number"))),
        },
        Err(_) => Ok(FixedPointOptions::default().tol),
    }
}

fn labels(p: GreenParams) -> Vec<String> {
    (0..p.rows()).map(|k| row_abscissa(k).label()).collect()
}

fn cmd_ffact(ctx: &mut Ctx, t: &str, nu: &str, alpha: f64) -> Result<Done> {
    ctx.param("t", t);
    ctx.param("nu", nu);
    ctx.fparam("alpha", alpha);
    let order = Order::new(alpha)?;
    let (tp, np) = (parse_point(t)?, parse_point(nu)?);
    let (value, path, tv, nv) = match (tp, np) {
        (Point::Exact(t), Point::Exact(nu)) => (falling_factorial(t, nu, order)?, "exact", t.value(order), nu.value(order)),
        (t, nu) => {
            ctx.warnings.push("plain real abscissa: poles detected with a 1e-12 integrality tolerance".into());
            let real = |p: Point| match p {
                Point::Exact(g) => g.value(order),
                Point::Real(x) => x,
            };
            let (tv, nv) = (real(t), real(nu));
            (falling_factorial_real(tv, nv)?, "real", tv, nv)
        }
    };
    let mut table = Table::new(&["t", "nu", "alpha", "value"]);
    table.push(vec![tv.into(), nv.into(), alpha.into(), value.into()]);
    done(Obj::new().float("value", value).with("path", path).float("t_value", tv).float("nu_value", nv), table)
}

fn cmd_green(ctx: &mut Ctx, alpha: f64, b: u32) -> Result<Done> {
    ctx.fparam("alpha", alpha);
    ctx.param("b", b);
    let p = GreenParams::new(alpha, b)?;
    let kernel = green_kernel(p);
    let columns: Vec<String> = (0..p.cols()).map(|s| format!("s={s}")).collect();
    let mut header = vec!["t".to_string()];
    header.extend(columns.iter().cloned());
    let mut table = Table { header, rows: Vec::new() };
    let mut rows = Vec::new();
    for (k, label) in labels(p).into_iter().enumerate() {
        let values = kernel.g.row(k);
        let mut row = vec![Cell::Text(label.clone())];
        row.extend(values.iter().map(|&v| Cell::Float(v)));
        table.push(row);
        rows.push(Obj::new().with("k", k).with("t", label).with("values", nums(values)).into_value());
    }
    done(Obj::new().float("denom", kernel.denom).with("columns", columns).with("rows", rows), table)
}

fn cmd_green_max(ctx: &mut Ctx, alpha: f64, b: u32) -> Result<Done> {
    ctx.fparam("alpha", alpha);
    ctx.param("b", b);
    let p = GreenParams::new(alpha, b)?;
    let closed = green_max_closed_form(p);
    let scan = green_diag_max_exhaustive(p);
    let kernel = green_kernel(p);
    let mut table = Table::new(&["s", "diagonal", "q", "increment"]);
    let mut diag = Vec::new();
    for s in 0..p.cols() {
        let q = diag_increment_factor(alpha, b, s as u32);
        let inc = if (s as u32) < b { diag_increment_closed_form(p, s as u32)? } else { f64::NAN };
        table.push(vec![Cell::Int(s as i64), kernel.get(s, s).into(), q.into(), inc.into()]);
        diag.push(Obj::new().with("s", s).float("diagonal", kernel.get(s, s)).float("q", q).float("increment", inc).into_value());
    }
    done(
        Obj::new()
            .float("closed_form", closed)
            .with("exhaustive", Obj::new().with("s_star", scan.s_star).float("value", scan.value))
            .float("relative_difference", (closed - scan.value).abs() / scan.value)
            .with("diagonal", diag),
        table,
    )
}

fn cmd_bound(ctx: &mut Ctx, alpha: f64, b: u32) -> Result<Done> {
    ctx.fparam("alpha", alpha);
    ctx.param("b", b);
    let p = GreenParams::new(alpha, b)?;
    let c = lyapunov_bound(p);
    let g = green_max_closed_form(p);
    let mut table = Table::new(&["alpha", "b", "bound_c", "g_max"]);
    table.push(vec![alpha.into(), Cell::Int(b as i64), c.into(), g.into()]);
    done(Obj::new().float("bound_c", c).float("g_max", g), table)
}

struct SolveOpts<'a> {
    f: Option<&'a str>,
    lambda: f64,
    homogeneous: bool,
    tol: Option<f64>,
    max_iter: usize,
    omega: f64,
}

fn cmd_solve(ctx: &mut Ctx, alpha: f64, b: u32, h: &str, o: SolveOpts<'_>) -> Result<Done> {
    ctx.fparam("alpha", alpha);
    ctx.param("b", b);
    ctx.param("h", h);
    let hv = parse_samples(h, b as usize + 1, "h")?;
    ctx.param("h_values", nums(&hv));
    let Some(f) = o.f else {
        let direct = solve_linear_bvp_direct(alpha, b, &hv)?;
        let green = match GreenParams::new(alpha, b) {
            Ok(p) => Some(solve_linear_bvp_green(p, &hv)?),
            Err(e) => {
                ctx.warnings.push(format!("Green route skipped: {e}"));
                None
            }
        };
        let lab: Vec<String> = (0..direct.len()).map(|k| row_abscissa(k).label()).collect();
        let mut table = Table::new(&["t", "y_direct", "y_green"]);
        for k in 0..direct.len() {
            let g = green.as_ref().map_or(f64::NAN, |g| g.values()[k]);
            table.push(vec![lab[k].clone().into(), direct.values()[k].into(), g.into()]);
        }
        let diff = green.as_ref().map_or(f64::NAN, |g| {
            direct.values().iter().zip(g.values()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())) / direct.sup_norm().max(1e-300)
        });
        let results = Obj::new()
            .with("abscissae", lab)
            .with("y_direct", nums(direct.values()))
            .with("y_green", green.as_ref().map_or(Value::Null, |g| nums(g.values())))
            .float("relative_difference", diff);
        return done(results, table);
    };

    let tol = match o.tol {
        Some(t) => t,
        None => default_tol()?,
    };
    ctx.param("f", f);
    ctx.fparam("lambda", o.lambda);
    ctx.fparam("tol", tol);
    ctx.param("max_iter", o.max_iter);
    ctx.fparam("omega", o.omega);
    ctx.param("method", if o.homogeneous { "homogeneous" } else { "picard" });
    let p = GreenParams::new(alpha, b)?;
    let problem = BvpProblem::new(p, hv, o.lambda, parse_nonlinearity(f)?)?;
    let opts = FixedPointOptions { tol, max_iter: o.max_iter, omega: o.omega, initial: None };
    let outcome = if o.homogeneous {
        solve_homogeneous_fixed_point(&problem, &opts)?
    } else {
        crate::green::solve_nonlinear_fixed_point(&problem, &opts)?
    };
    let (y, converged) = match &outcome {
        FixedPointOutcome::Converged { y, .. } => (y, true),
        FixedPointOutcome::NoConvergence { last, .. } => (last, false),
    };
    let lab = labels(p);
    let mut table = Table::new(&["t", "y"]);
    for (k, v) in y.values().iter().enumerate() {
        table.push(vec![lab[k].clone().into(), (*v).into()]);
    }
    let results = Obj::new()
        .with("converged", converged)
        .with("iterations", outcome.iterations())
        .float("residual", outcome.residual())
        .with("abscissae", lab)
        .with("y", nums(y.values()));
    let code = if converged {
        0
    } else {
        ctx.errors.push(Error::NoConvergence { iterations: outcome.iterations(), residual: outcome.residual() }.to_string());
        3
    };
    Ok(Done { results: results.into(), table, code })
}

fn cmd_eigen(ctx: &mut Ctx, alpha: f64, b: u32, h: &str) -> Result<Done> {
    ctx.fparam("alpha", alpha);
    ctx.param("b", b);
    ctx.param("h", h);
    let p = GreenParams::new(alpha, b)?;
    let hv = parse_samples(h, p.cols(), "h")?;
    ctx.param("h_values", nums(&hv));
    let e = perron_smallest_lambda(p, &hv)?;
    let bisect = smallest_lambda_bisection(p, &hv)?;
    let lab = labels(p);
    let mut table = Table::new(&["t", "y_star"]);
    for (k, v) in e.y_star.values().iter().enumerate() {
        table.push(vec![lab[k].clone().into(), (*v).into()]);
    }
    done(
        Obj::new()
            .float("lambda_star", e.lambda_star)
            .float("lambda_bisection", bisect)
            .with("iterations", e.iterations)
            .float("residual", e.residual)
            .with("abscissae", lab)
            .with("y_star", nums(e.y_star.values())),
        table,
    )
}

fn cmd_check(ctx: &mut Ctx, alpha: f64, b: u32, h: &str, f: &str, lambda: f64, y: &str) -> Result<Done> {
    ctx.fparam("alpha", alpha);
    ctx.param("b", b);
    ctx.param("h", h);
    ctx.param("f", f);
    ctx.fparam("lambda", lambda);
    ctx.param("y", y);
    let p = GreenParams::new(alpha, b)?;
    let problem = BvpProblem::new(p, parse_samples(h, p.cols(), "h")?, lambda, parse_nonlinearity(f)?)?;
    let yv = parse_samples(y, p.rows(), "y")?;
    let yf = crate::calculus::GridFunction::new(crate::green::solution_lattice(p.alpha()), yv)?;
    let r = check_inequality(&problem, &yf)?;
    let fields = [
        ("bound_c", r.bound_c),
        ("h_sum", r.h_sum),
        ("eta", r.eta),
        ("f_eta", r.f_eta),
        ("lhs", r.lhs),
        ("rhs", r.rhs),
        ("margin", r.margin),
        ("residual", r.residual),
    ];
    let mut table = Table::new(&["field", "value"]);
    let mut results = Obj::new();
    for (k, v) in fields {
        table.push(vec![k.into(), v.into()]);
        results = results.float(k, v);
    }
    table.push(vec!["holds".into(), r.holds.to_string().into()]);
    done(results.with("holds", r.holds), table)
}

fn cmd_sweep(ctx: &mut Ctx, alphas: &str, bs: &str) -> Result<Done> {
    let alphas = parse_f64_list(alphas)?;
    let bs = parse_u32_list(bs)?;
    ctx.param("alphas", nums(&alphas));
    ctx.param("bs", bs.clone());
    let rows = bound_sweep(&alphas, &bs);
    let mut table = Table::new(&[
        "alpha",
        "b",
        "status",
        "bound_c",
        "g_max",
        "lambda_star",
        "lambda_bisection",
        "lambda_sum",
        "margin",
        "holds",
        "duality_error",
    ]);
    let mut out = Vec::new();
    for r in &rows {
        let (status, note) = match &r.status {
            SweepStatus::Ok => ("ok", String::new()),
            SweepStatus::Degenerate(m) => ("degenerate", m.clone()),
            SweepStatus::Error(m) => ("error", m.clone()),
        };
        table.push(vec![
            r.alpha.into(),
            Cell::Int(r.b as i64),
            status.into(),
            r.bound_c.into(),
            r.g_max.into(),
            r.lambda_star.into(),
            r.lambda_bisection.into(),
            r.lambda_sum.into(),
            r.margin.into(),
            r.holds.to_string().into(),
            r.duality_error.into(),
        ]);
        out.push(
            Obj::new()
                .float("alpha", r.alpha)
                .with("b", r.b)
                .with("status", status)
                .with("note", note)
                .float("bound_c", r.bound_c)
                .float("g_max", r.g_max)
                .float("lambda_star", r.lambda_star)
                .float("lambda_bisection", r.lambda_bisection)
                .float("lambda_sum", r.lambda_sum)
                .float("margin", r.margin)
                .with("holds", r.holds)
                .float("duality_error", r.duality_error)
                .into_value(),
        );
    }
    let violations = rows.iter().filter(|r| r.status == SweepStatus::Ok && !r.holds).count();
    if violations > 0 {
        ctx.warnings.push(format!("{violations} cells violate lambda*(b+1) >= C(alpha,b)"));
    }
    done(Obj::new().with("rows", out).with("violations", violations), table)
}

fn cmd_verify(ctx: &mut Ctx, level: Level) -> Result<Done> {
    let name = match level {
        Level::Quick => "quick",
        Level::Full => "full",
    };
    ctx.param("level", name);
    let checks = verify::run(level);
    let mut table = Table::new(&["check", "passed", "detail"]);
    let mut out = Vec::new();
    for c in &checks {
        table.push(vec![c.name.into(), c.passed.to_string().into(), c.detail.clone().into()]);
        out.push(Obj::new().with("name", c.name).with("passed", c.passed).with("detail", c.detail.clone()).into_value());
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in checks.iter().filter(|c| !c.passed) {
        ctx.errors.push(format!("check {} failed: {}", c.name, c.detail));
    }
    Ok(Done {
        results: Obj::new().with("checks", out).with("passed", checks.len() - failed).with("failed", failed).into(),
        table,
        code: if failed == 0 { 0 } else { 1 },
    })
}

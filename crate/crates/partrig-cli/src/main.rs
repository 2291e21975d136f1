//! Command-line front end for the `partrig` library.
//!
//! Five subcommands cover the everyday uses of the function family:
//!
//! - `eval`: one point of (C, S) for a given exponent pair and phi,
//! - `table`: a uniform tabulation over a phi range,
//! - `compare`: cross-check every applicable backend pair on a shared grid,
//! - `figure`: the two canned plot data sets (branch profile, principal-value
//!   angle),
//! - `osc`: solve the variable-coefficient oscillator and report its residual.
//!
//! All data output is CSV: a header line, comma-separated columns, `\n` line
//! endings, and `#` for comment lines. Floats are printed with Rust's default
//! shortest-round-trip formatting, so output is bitwise reproducible across
//! runs.
//!
//! Exit codes: 0 success, 2 validation error (bad arguments or out-of-domain
//! requests), 3 numerical failure (an iteration that did not converge),
//! 4 tolerance violation (a cross-check or residual bound exceeded).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use partrig::oscillator::{self, Coefficient, OscillatorProblem};
use partrig::parabolic::{self, GdMode};
use partrig::{gentrig, Params, Tolerances};

/// Validity window of the `series` backend.
const SERIES_WINDOW: f64 = 0.5;

/// Number of sample points in each figure data set.
const FIG_POINTS: usize = 512;

/// Largest acceptable oscillator residual before `osc` exits nonzero.
const RESIDUAL_LIMIT: f64 = 1e-3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => err.report(),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Table(args) => cmd_table(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Osc(args) => cmd_osc(args),
    }
}

// ---------------------------------------------------------------------------
// Errors and exit codes
// ---------------------------------------------------------------------------

/// CLI-level error, already classified into the exit-code taxonomy.
enum CliError {
    /// Bad arguments or an out-of-domain request: exit code 2.
    Validation(String),
    /// A numerical kernel failed to converge: exit code 3.
    Numerical(String),
    /// A cross-check disagreed or a residual bound was exceeded: exit code 4.
    Tolerance(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        let (label, msg, code) = match self {
            CliError::Validation(m) => ("validation", m, 2),
            CliError::Numerical(m) => ("numerical", m, 3),
            CliError::Tolerance(m) => ("tolerance", m, 4),
        };
        eprintln!("error ({label}): {msg}");
        ExitCode::from(code)
    }
}

impl From<partrig::Error> for CliError {
    fn from(e: partrig::Error) -> Self {
        use partrig::Error::*;
        let msg = e.to_string();
        match e {
            InvalidTolerances { .. }
            | PhiOutOfDomain { .. }
            | BadParams { .. }
            | TangentPole { .. }
            | NonPositiveCoefficient { .. }
            | GridTooCoarse { .. }
            | InvalidGrid { .. }
            | InvalidInput { .. } => CliError::Validation(msg),
            InvalidBracket { .. }
            | RootNoConvergence { .. }
            | QuadratureNoConvergence { .. }
            | NonFiniteIntegrand { .. }
            | StepSizeUnderflow { .. }
            | OdeStepBudget { .. }
            | DerivativeSingularity { .. } => CliError::Numerical(msg),
        }
    }
}

// ---------------------------------------------------------------------------
// Argument definitions
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "partrig",
    version,
    about = "Tables, cross-checks, and oscillator runs for the generalized \
             trigonometric family C^p + S^q = 1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate (C, S) at a single phi
    Eval(EvalArgs),
    /// Tabulate (C, S) on a uniform grid over [from, to]
    Table(TableArgs),
    /// Evaluate several backends on a shared grid and report their worst
    /// disagreement per pair
    Compare(CompareArgs),
    /// Emit a canned figure data set
    Figure(FigureArgs),
    /// Solve A y'' + (A'/2) y' + y = 0 on a uniform grid and check the
    /// residual
    Osc(OscArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Exponent p in the defining curve C^p + S^q = 1
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Exponent q in the defining curve C^p + S^q = 1
    #[arg(long, default_value_t = 1)]
    q: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<Params, CliError> {
        Ok(Params::new(self.p, self.q)?)
    }
}

#[derive(Args)]
struct TolArgs {
    /// Absolute tolerance handed to the numerical kernels
    #[arg(long = "abs-tol", default_value_t = 1e-12)]
    abs_tol: f64,
    /// Relative tolerance handed to the numerical kernels
    #[arg(long = "rel-tol", default_value_t = 1e-10)]
    rel_tol: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Result<Tolerances, CliError> {
        let tol = Tolerances {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            ..Tolerances::default()
        };
        tol.check()?;
        Ok(tol)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Backend {
    /// Radical closed form (p = 2, q = 1 only)
    Closed,
    /// Hyperbolic-function rewrite of the closed form (p = 2, q = 1 only)
    Hyper,
    /// Small-phi series, |phi| <= 0.5 (p = 2, q = 1 only)
    Series,
    /// Area-parametrization root solve (any supported p, q)
    Area,
    /// Initial-value ODE integration (any supported p, q)
    Ode,
}

fn backend_label(b: Backend) -> &'static str {
    match b {
        Backend::Closed => "closed",
        Backend::Hyper => "hyper",
        Backend::Series => "series",
        Backend::Area => "area",
        Backend::Ode => "ode",
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Evaluation point
    #[arg(long, allow_hyphen_values = true)]
    phi: f64,
    /// Evaluation backend
    #[arg(long, value_enum, default_value = "area")]
    backend: Backend,
    #[command(flatten)]
    tol: TolArgs,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Lower end of the phi range
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    from: f64,
    /// Upper end of the phi range (must exceed --from)
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    /// Number of uniform steps; the table has steps + 1 rows
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// Evaluation backend
    #[arg(long, value_enum, default_value = "area")]
    backend: Backend,
    #[command(flatten)]
    tol: TolArgs,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Lower end of the phi range (default 0)
    #[arg(long, allow_hyphen_values = true)]
    from: Option<f64>,
    /// Upper end of the phi range (default: end of the principal branch)
    #[arg(long, allow_hyphen_values = true)]
    to: Option<f64>,
    /// Number of uniform steps in the comparison grid
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[command(flatten)]
    tol: TolArgs,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Perturb the ode backend by this amount (negative control for the
    /// test suite)
    #[arg(long = "inject-fault", hide = true, allow_hyphen_values = true)]
    inject_fault: Option<f64>,
}

#[derive(Copy, Clone, ValueEnum)]
enum FigureId {
    /// (phi, cosp, sinp) over one branch
    Fig5,
    /// (phi, atan(tgp)) over one branch, skipping the pole neighborhood
    Fig6,
}

#[derive(Args)]
struct FigureArgs {
    /// Which data set to emit
    #[arg(value_enum)]
    id: FigureId,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OscArgs {
    /// Coefficient A(phi): constant, one_plus_phi_squared, or ip4_parabolic
    coefficient: String,
    /// Amplitude of the cosine component at phi = 0
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Amplitude of the sine component at phi = 0
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    /// Upper end of the solution interval [0, to]
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    /// Number of uniform steps (at least 3, so the residual stencil has an
    /// interior)
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    #[command(flatten)]
    tol: TolArgs,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

fn ensure_finite(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("{name} must be finite, got {v}")))
    }
}

fn is_parabolic(params: Params) -> bool {
    params.p() == 2 && params.q() == 1
}

/// The three parabolic-specific backends require (p, q) = (2, 1).
fn check_backend_params(backend: Backend, params: Params) -> Result<(), CliError> {
    let parabolic_only = matches!(backend, Backend::Closed | Backend::Hyper | Backend::Series);
    if parabolic_only && !is_parabolic(params) {
        return Err(CliError::Validation(format!(
            "backend `{}` applies only to (p, q) = (2, 1); got ({}, {})",
            backend_label(backend),
            params.p(),
            params.q()
        )));
    }
    Ok(())
}

/// The series backend is only accurate on a small window around the origin;
/// outside it the truncation error is no longer negligible, so requests there
/// are rejected rather than silently answered badly.
fn check_series_window(backend: Backend, lo: f64, hi: f64) -> Result<(), CliError> {
    if backend == Backend::Series && (lo < -SERIES_WINDOW || hi > SERIES_WINDOW) {
        return Err(CliError::Validation(format!(
            "series backend is restricted to |phi| <= {SERIES_WINDOW}; requested [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// The closed and hyper backends continue analytically outside the principal
/// branch [0, 8/3]; that is often useful, but worth a note because the area
/// and ode backends would reject the same range.
fn warn_extended_branch(backend: Backend, lo: f64, hi: f64) {
    if matches!(backend, Backend::Closed | Backend::Hyper)
        && (lo < 0.0 || hi > parabolic::BRANCH_END)
    {
        eprintln!(
            "note: phi range [{lo}, {hi}] extends beyond the principal branch \
             [0, {}]; closed-form values continue analytically",
            parabolic::BRANCH_END
        );
    }
}

/// (C, S) at one point through the chosen backend.
fn eval_backend(
    backend: Backend,
    params: Params,
    phi: f64,
    tol: &Tolerances,
) -> Result<(f64, f64), CliError> {
    match backend {
        Backend::Closed => Ok((parabolic::cosp_closed(phi), parabolic::sinp_closed(phi))),
        Backend::Hyper => Ok(parabolic::cosp_hyper(phi)),
        Backend::Series => Ok(parabolic::series(phi)),
        Backend::Area => {
            let v = gentrig::eval_area(params, phi, tol)?;
            Ok((v.c, v.s))
        }
        Backend::Ode => {
            let v = gentrig::eval_ode(params, phi, tol)?;
            Ok((v.c, v.s))
        }
    }
}

fn header_for(params: Params) -> &'static str {
    if is_parabolic(params) {
        "phi,c,s,ip,gdp"
    } else {
        "phi,c,s"
    }
}

/// One CSV data row. For the parabolic pair two derived columns are added:
/// the modulus ip = hypot(C, S) and the continuous angle gdp.
fn format_row(
    params: Params,
    backend: Backend,
    phi: f64,
    tol: &Tolerances,
) -> Result<String, CliError> {
    let (c, s) = eval_backend(backend, params, phi, tol)?;
    if is_parabolic(params) {
        let ip = c.hypot(s);
        let gdp = parabolic::gdp(phi, GdMode::Continuous, tol)?;
        Ok(format!("{phi},{c},{s},{ip},{gdp}"))
    } else {
        Ok(format!("{phi},{c},{s}"))
    }
}

/// Uniform grid point i of `steps` segments over [from, to]; the endpoints
/// are reproduced exactly.
fn grid_point(from: f64, to: f64, steps: usize, i: usize) -> f64 {
    if i == 0 {
        from
    } else if i == steps {
        to
    } else {
        from + (to - from) * i as f64 / steps as f64
    }
}

/// End of the principal branch: phi at which C reaches its minimum (-1 for
/// even p, 0 for odd p).
fn branch_end(params: Params) -> Result<f64, CliError> {
    if is_parabolic(params) {
        return Ok(parabolic::BRANCH_END);
    }
    let quarter = gentrig::quarter_period(params)?;
    Ok(if params.p().is_multiple_of(2) {
        2.0 * quarter
    } else {
        quarter
    })
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let params = args.params.params()?;
    let tol = args.tol.tolerances()?;
    ensure_finite("--phi", args.phi)?;
    check_backend_params(args.backend, params)?;
    check_series_window(args.backend, args.phi, args.phi)?;
    warn_extended_branch(args.backend, args.phi, args.phi);

    let mut out = String::new();
    writeln!(out, "{}", header_for(params)).expect("string write");
    writeln!(out, "{}", format_row(params, args.backend, args.phi, &tol)?).expect("string write");
    write_output(args.out.as_deref(), &out)
}

fn cmd_table(args: TableArgs) -> Result<(), CliError> {
    let params = args.params.params()?;
    let tol = args.tol.tolerances()?;
    ensure_finite("--from", args.from)?;
    ensure_finite("--to", args.to)?;
    if args.from >= args.to {
        return Err(CliError::Validation(format!(
            "--from must be strictly less than --to, got [{}, {}]",
            args.from, args.to
        )));
    }
    if args.steps < 1 {
        return Err(CliError::Validation("--steps must be at least 1".to_string()));
    }
    check_backend_params(args.backend, params)?;
    check_series_window(args.backend, args.from, args.to)?;
    warn_extended_branch(args.backend, args.from, args.to);

    let mut out = String::new();
    writeln!(out, "{}", header_for(params)).expect("string write");
    for i in 0..=args.steps {
        let phi = grid_point(args.from, args.to, args.steps, i);
        writeln!(out, "{}", format_row(params, args.backend, phi, &tol)?).expect("string write");
    }
    write_output(args.out.as_deref(), &out)
}

/// Documented agreement tolerances: closed<->hyper 1e-12, closed<->area
/// 1e-10, anything<->ode 1e-8. The loosest member of a pair sets the bound.
fn pair_tolerance(a: Backend, b: Backend) -> f64 {
    fn class(x: Backend) -> f64 {
        match x {
            Backend::Closed | Backend::Hyper => 1e-12,
            Backend::Area => 1e-10,
            Backend::Ode => 1e-8,
            // The series backend is a small-window approximation, not an
            // exact evaluation route, so it never takes part in compare.
            Backend::Series => f64::INFINITY,
        }
    }
    class(a).max(class(b))
}

fn cmd_compare(args: CompareArgs) -> Result<(), CliError> {
    let params = args.params.params()?;
    let tol = args.tol.tolerances()?;
    let from = args.from.unwrap_or(0.0);
    let to = match args.to {
        Some(t) => t,
        None => branch_end(params)?,
    };
    ensure_finite("--from", from)?;
    ensure_finite("--to", to)?;
    if from >= to {
        return Err(CliError::Validation(format!(
            "--from must be strictly less than --to, got [{from}, {to}]"
        )));
    }
    if args.steps < 1 {
        return Err(CliError::Validation("--steps must be at least 1".to_string()));
    }

    let backends: &[Backend] = if is_parabolic(params) {
        &[Backend::Closed, Backend::Hyper, Backend::Area, Backend::Ode]
    } else {
        &[Backend::Area, Backend::Ode]
    };

    let phis: Vec<f64> = (0..=args.steps)
        .map(|i| grid_point(from, to, args.steps, i))
        .collect();

    let mut values: Vec<Vec<(f64, f64)>> = Vec::with_capacity(backends.len());
    for &backend in backends {
        let mut column = Vec::with_capacity(phis.len());
        for &phi in &phis {
            column.push(eval_backend(backend, params, phi, &tol)?);
        }
        if backend == Backend::Ode {
            if let Some(eps) = args.inject_fault {
                for v in &mut column {
                    v.0 += eps;
                    v.1 += eps;
                }
            }
        }
        values.push(column);
    }

    let mut out = String::from("pair,max_dc,max_ds,tolerance,pass\n");
    let mut first_failure: Option<(String, f64, f64)> = None;
    for i in 0..backends.len() {
        for j in i + 1..backends.len() {
            let bound = pair_tolerance(backends[i], backends[j]);
            let mut max_dc: f64 = 0.0;
            let mut max_ds: f64 = 0.0;
            for (vi, vj) in values[i].iter().zip(&values[j]) {
                max_dc = max_dc.max((vi.0 - vj.0).abs());
                max_ds = max_ds.max((vi.1 - vj.1).abs());
            }
            let pass = max_dc <= bound && max_ds <= bound;
            let label = format!(
                "{}-{}",
                backend_label(backends[i]),
                backend_label(backends[j])
            );
            writeln!(out, "{label},{max_dc:e},{max_ds:e},{bound:e},{pass}")
                .expect("string write");
            if !pass && first_failure.is_none() {
                first_failure = Some((label, max_dc.max(max_ds), bound));
            }
        }
    }
    write_output(args.out.as_deref(), &out)?;

    if let Some((label, worst, bound)) = first_failure {
        return Err(CliError::Tolerance(format!(
            "backend pair {label} disagrees by {worst:e} (tolerance {bound:e})"
        )));
    }
    Ok(())
}

fn cmd_figure(args: FigureArgs) -> Result<(), CliError> {
    let last = (FIG_POINTS - 1) as f64;
    let mut out = String::new();
    match args.id {
        FigureId::Fig5 => {
            out.push_str("phi,cosp,sinp\n");
            for i in 0..FIG_POINTS {
                let phi = parabolic::BRANCH_END * i as f64 / last;
                let c = parabolic::cosp_closed(phi);
                let s = parabolic::sinp_closed(phi);
                writeln!(out, "{phi},{c},{s}").expect("string write");
            }
        }
        FigureId::Fig6 => {
            out.push_str("phi,atan_tgp\n");
            let h = parabolic::BRANCH_END / last;
            for i in 0..FIG_POINTS {
                let phi = parabolic::BRANCH_END * i as f64 / last;
                // The two grid points straddling the pole of tgp at the
                // quarter period sit half a step from it; skip them so the
                // data set shows the jump without a wild near-pole value.
                if (phi - parabolic::QUARTER_PERIOD).abs() < 0.5000001 * h {
                    continue;
                }
                let angle = (parabolic::sinp_closed(phi) / parabolic::cosp_closed(phi)).atan();
                writeln!(out, "{phi},{angle}").expect("string write");
            }
        }
    }
    write_output(args.out.as_deref(), &out)
}

fn cmd_osc(args: OscArgs) -> Result<(), CliError> {
    let tol = args.tol.tolerances()?;
    let coefficient = Coefficient::from_str(&args.coefficient)?;
    ensure_finite("--alpha", args.alpha)?;
    ensure_finite("--beta", args.beta)?;
    ensure_finite("--to", args.to)?;
    if args.to <= 0.0 {
        return Err(CliError::Validation(format!(
            "--to must be positive, got {}",
            args.to
        )));
    }
    if args.steps < 3 {
        return Err(CliError::Validation(format!(
            "--steps must be at least 3 so the residual stencil has interior \
             points, got {}",
            args.steps
        )));
    }

    let problem = OscillatorProblem {
        coefficient,
        alpha: args.alpha,
        beta: args.beta,
        grid: oscillator::uniform_grid(args.to, args.steps),
    };
    let y = oscillator::solve(&problem, &tol)?;
    let residual = oscillator::residual(&problem, &y)?;

    let mut out = String::from("phi,y\n");
    for (phi, yi) in problem.grid.iter().zip(&y) {
        writeln!(out, "{phi},{yi}").expect("string write");
    }
    writeln!(out, "# residual = {residual:e}").expect("string write");
    write_output(args.out.as_deref(), &out)?;

    if residual > RESIDUAL_LIMIT {
        return Err(CliError::Tolerance(format!(
            "oscillator residual {residual:e} exceeds {RESIDUAL_LIMIT:e}"
        )));
    }
    Ok(())
}

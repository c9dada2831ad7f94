//! Command-line front end. Every subcommand prints deterministic output with
//! floats rounded to 15 significant digits and returns an exit code:
//! `0` pass, `1` verification failure, `2` usage or I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::bifurcation::{
    build_green_basis, lemma3_verify, lemma4_kernel_check, DEFAULT_GREEN_GRID,
};
use crate::diophantine::{cantor_params, min_divisor_scan, DivisorParams, Family, DEFAULT_DELTA};
use crate::elliptic::EllipticProfile;
use crate::fourier_field::SpaceWeights;
use crate::ls_solver::{
    linspace, sample_grid, solve_full, write_csv, LSConfig, LSSolution, Nonlinearity,
};
use crate::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qpwave",
    version,
    about = "Quasi-periodic waves for v_tt - v_xx + v^3 = f(v)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Calibrated profile constants with their expected ranges.
    Constants,
    /// Green-operator identities and the derived constants A0, B0, C0.
    Lemma3 {
        /// Collocation grid of the Green operator (power of two, >= 1024).
        #[arg(long, default_value_t = DEFAULT_GREEN_GRID)]
        grid: usize,
    },
    /// Injectivity of the linearised bifurcation map at (1, 0, beta, beta).
    Nondegeneracy {
        /// Cosine modes of the base discretisation; 2x and 4x are also checked.
        #[arg(long, default_value_t = 16)]
        modes: usize,
        #[arg(long, default_value_t = DEFAULT_GREEN_GRID)]
        grid: usize,
    },
    /// Minimum of |D(m,n)| over a box of modes.
    DivisorScan {
        #[command(flatten)]
        params: ParamArgs,
        /// Half-width of the scanned box.
        #[arg(long, default_value_t = 200)]
        n_max: i64,
    },
    /// Solve the truncated equation and write the solution as JSON.
    Solve {
        /// JSON solver configuration; overrides the parameter flags.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        params: ParamArgs,
        /// Analytic weight sigma.
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        /// Sobolev exponent s.
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        /// Fourier truncation N.
        #[arg(long, default_value_t = 32)]
        modes: usize,
        /// Nonlinearity preset: zero, v4 or v5.
        #[arg(long, default_value = "zero")]
        nonlinearity: String,
        /// Coefficients of f(v) from v^0 (the first four must be zero); overrides the preset.
        #[arg(long, value_delimiter = ',')]
        f: Vec<f64>,
        /// Output file for the solution.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a stored solution on a (t, x) grid as CSV.
    Sample {
        /// Solution file written by `solve`.
        #[arg(long)]
        solution: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Output CSV; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Co,
    Counter,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Co => Family::Co,
            FamilyArg::Counter => Family::Counter,
        }
    }
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Co)]
    pub family: FamilyArg,
    /// First partial quotient of the certified Cantor-set construction.
    #[arg(long, default_value_t = 200)]
    pub a1: u64,
    /// Use this b (co) or a (counter) instead of the certified construction.
    #[arg(long, requires = "epsilon")]
    pub param: Option<f64>,
    #[arg(long, requires = "param")]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    pub delta: f64,
}

impl ParamArgs {
    fn resolve(&self) -> crate::Result<DivisorParams> {
        let family = self.family.into();
        match (self.param, self.epsilon) {
            (Some(p), Some(e)) => DivisorParams::from_param(family, p, e, self.gamma, self.delta),
            _ => {
                let mut p = cantor_params(family, self.a1, self.gamma, 2000)?.params;
                p.delta = self.delta;
                Ok(p)
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.0)]
    pub t0: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t1: f64,
    #[arg(long, default_value_t = 11)]
    pub nt: usize,
    #[arg(long, default_value_t = 0.0)]
    pub x0: f64,
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    pub x1: f64,
    #[arg(long, default_value_t = 17)]
    pub nx: usize,
}

/// Rounds every float in a JSON tree to 15 significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let r: f64 = format!("{x:.14e}").parse().unwrap_or(x);
            serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with rounded floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).unwrap_or(Value::Null);
    serde_json::to_string_pretty(&round_json(v)).unwrap_or_default()
}

fn fmt15(x: f64) -> String {
    format!("{x:.14e}")
}

enum Failure {
    Usage(String),
    Fail(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } => Failure::Fail(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn path_err(p: &std::path::Path) -> impl Fn(&dyn std::fmt::Display) -> Failure + '_ {
    move |e| Failure::Usage(format!("{}: {e}", p.display()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(Failure::Fail(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_FAIL
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<bool, Failure> {
    match cmd {
        Command::Constants => cmd_constants(out),
        Command::Lemma3 { grid } => {
            let basis = build_green_basis(&EllipticProfile::calibrated(), *grid)?;
            let r = lemma3_verify(&basis)?;
            writeln!(out, "{}", to_json(&r)).map_err(io_err)?;
            Ok(r.pass)
        }
        Command::Nondegeneracy { modes, grid } => {
            let basis = build_green_basis(&EllipticProfile::calibrated(), *grid)?;
            let r = lemma4_kernel_check(&basis, *modes)?;
            writeln!(out, "{}", to_json(&r)).map_err(io_err)?;
            Ok(r.pass)
        }
        Command::DivisorScan { params, n_max } => {
            let p = params.resolve()?;
            let r = min_divisor_scan(&p, *n_max)?;
            writeln!(out, "{}", to_json(&r)).map_err(io_err)?;
            Ok(r.pass())
        }
        Command::Solve {
            config,
            params,
            sigma,
            s,
            modes,
            nonlinearity,
            f,
            out: path,
        } => {
            let cfg = match config {
                Some(p) => {
                    let text = fs::read_to_string(p).map_err(|e| path_err(p)(&e))?;
                    serde_json::from_str::<LSConfig>(&text).map_err(|e| path_err(p)(&e))?
                }
                None => {
                    let w = SpaceWeights::new(*sigma, *s, *modes)?;
                    let nl = if f.is_empty() {
                        Nonlinearity::preset(nonlinearity)?
                    } else {
                        Nonlinearity::new(f.clone())?
                    };
                    LSConfig::new(w, params.resolve()?).with_nonlinearity(nl)
                }
            };
            let sol = solve_full(&cfg)?;
            writeln!(out, "{}", to_json(&sol.diagnostics)).map_err(io_err)?;
            writeln!(out, "residual_norm {}", fmt15(sol.residual_norm)).map_err(io_err)?;
            if let Some(p) = path {
                let text = serde_json::to_string(&sol).map_err(io_err)?;
                fs::write(p, text).map_err(|e| path_err(p)(&e))?;
            }
            Ok(sol.residual_norm < 1e-8)
        }
        Command::Sample {
            solution,
            grid,
            out: path,
        } => {
            let text = fs::read_to_string(solution).map_err(|e| path_err(solution)(&e))?;
            let sol: LSSolution =
                serde_json::from_str(&text).map_err(|e| path_err(solution)(&e))?;
            let ts = linspace(grid.t0, grid.t1, grid.nt);
            let xs = linspace(grid.x0, grid.x1, grid.nx);
            let rows = sample_grid(&sol, &ts, &xs);
            match path {
                Some(p) => {
                    let file = fs::File::create(p).map_err(|e| path_err(p)(&e))?;
                    write_csv(std::io::BufWriter::new(file), &rows)?;
                }
                None => write_csv(&mut *out, &rows)?,
            }
            Ok(true)
        }
    }
}

/// One line of the `constants` table.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantRow {
    pub name: &'static str,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    /// `PASS`, `FAIL`, or `FLAG` for published ranges the value is known to
    /// contradict.
    pub status: &'static str,
}

pub fn constant_rows() -> crate::Result<Vec<ConstantRow>> {
    let p = EllipticProfile::calibrated();
    let basis = build_green_basis(&p, DEFAULT_GREEN_GRID)?;
    let r = lemma3_verify(&basis)?;
    let row = |name, value: f64, lo, hi, flag: bool| ConstantRow {
        name,
        value,
        lo,
        hi,
        status: match (value > lo && value < hi, flag) {
            (true, _) => "PASS",
            (false, true) => "FLAG",
            (false, false) => "FAIL",
        },
    };
    Ok(vec![
        row("m_bar", p.m_bar, 0.20, 0.21, false),
        row("omega_bar", p.omega_bar, 1.05, 1.06, false),
        row("v_bar_squared", p.v_bar_squared(), 0.44, 0.48, false),
        row("sigma_bar", p.sigma_bar, 2.10, 2.16, false),
        row("mean_cn2", r.mean_cn2, 2.85, 2.90, true),
        row("mean_beta2", r.mean_beta2, 1.27, 1.37, true),
        row("k", r.k_quadrature, 0.0, f64::INFINITY, false),
        row("a0", r.a0, 0.0, f64::INFINITY, false),
        row("b0", r.b0, -1.0, -0.9, false),
        row("c0", r.c0, 2.9, 3.0, false),
    ])
}

fn cmd_constants(out: &mut dyn Write) -> Result<bool, Failure> {
    let rows = constant_rows()?;
    for r in &rows {
        writeln!(
            out,
            "{:<14} {:>22}  ({}, {})  {}",
            r.name,
            fmt15(r.value),
            r.lo,
            r.hi,
            r.status
        )
        .map_err(io_err)?;
    }
    Ok(rows.iter().all(|r| r.status != "FAIL"))
}

//! Command-line front end: operator evaluation tables, moment tables,
//! convergence and bound sweeps (CSV + optional SVG), and a self-test
//! suite.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 invalid parameters,
//! 3 I/O failure.

mod config;
mod output;
mod selftest;
mod svg;

use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pqss::moments::MomentSet;
use pqss::numeric::uniform_grid;
use pqss::{
    apply_bernstein_schurer, run_bound_sweep, run_korovkin, OperatorConfig, PQPair,
    StancuSchurer, DEFAULT_SMOOTHNESS_CONSTANT,
};

use config::{load_config_file, resolve, ExperimentConfig, ResolvedExperiment, DEFAULT_PRECISION};
use output::{bounds_csv, bounds_svg_series, fmt_num, korovkin_csv, korovkin_svg_series, moments_csv};

#[derive(Debug)]
pub enum CliError {
    /// Violated parameter invariant (exit 2).
    Invalid(String),
    /// Filesystem failure (exit 3).
    Io(String),
    /// One or more self-test groups failed (exit 1).
    SelftestFailed,
}

impl CliError {
    fn from_param(err: pqss::Error) -> Self {
        CliError::Invalid(err.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::SelftestFailed => 1,
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) => write!(f, "invalid parameters: {msg}"),
            CliError::Io(msg) => write!(f, "i/o failure: {msg}"),
            CliError::SelftestFailed => write!(f, "selftest failed"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "pqss",
    version,
    about = "Two-parameter Stancu-Schurer operators: evaluation, moments, convergence and bound sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the operator against a built-in function
    Eval(EvalArgs),
    /// Tabulate closed-form moments, optionally next to the brute-force oracle
    Moments(MomentsArgs),
    /// Sweep the monomials 1, t, t^2 along a parameter sequence
    Korovkin(SweepArgs),
    /// Sweep the error bounds over a function corpus
    Bounds(BoundsArgs),
    /// Run the oracle/invariant self-test suite
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum EvalMode {
    /// Shifted operator (alpha, beta active)
    StancuSchurer,
    /// Plain operator (requires alpha = beta = 0)
    BernsteinSchurer,
}

#[derive(Parser)]
struct OperatorFlags {
    /// Degree parameter n >= 1
    #[arg(long, default_value_t = 10)]
    n: u32,
    /// Domain shift l >= 0 (functions live on [0, l+1])
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Node numerator shift, 0 <= alpha <= beta
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Node denominator shift
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// First deformation parameter, 0 < q <= p <= 1
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Second deformation parameter
    #[arg(long, default_value_t = 0.9)]
    q: f64,
}

impl OperatorFlags {
    fn config(&self) -> Result<OperatorConfig, CliError> {
        let pq = PQPair::new(self.p, self.q).map_err(CliError::from_param)?;
        OperatorConfig::new(self.n, self.l, self.alpha, self.beta, pq).map_err(CliError::from_param)
    }
}

#[derive(Parser)]
struct EvalArgs {
    #[command(flatten)]
    operator: OperatorFlags,
    /// Built-in function name
    #[arg(long = "fn", value_name = "NAME")]
    function: String,
    /// Single evaluation point in [0,1]
    #[arg(long, conflicts_with = "grid")]
    x: Option<f64>,
    /// Evaluate on a uniform grid of this many points over [0,1]
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, value_enum, default_value_t = EvalMode::StancuSchurer)]
    mode: EvalMode,
    /// Decimal digits in printed numbers
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Parser)]
struct MomentsArgs {
    #[command(flatten)]
    operator: OperatorFlags,
    /// Number of grid points over [0,1]
    #[arg(long, default_value_t = 11)]
    grid: usize,
    /// Add brute-force oracle columns and a max_diff column
    #[arg(long)]
    oracle: bool,
    /// Write CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Parser)]
struct SweepArgs {
    /// JSON experiment config (exclusive with the individual flags)
    #[arg(
        long,
        value_name = "PATH",
        conflicts_with_all = ["l", "alpha", "beta", "n_values", "seq_kind", "c_p", "c_q", "r_p", "r_q", "corpus", "grid", "csv", "svg", "precision"]
    )]
    config: Option<PathBuf>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Comma-separated degrees, e.g. 10,25,50,100,200
    #[arg(long, value_delimiter = ',')]
    n_values: Option<Vec<u32>>,
    /// Sequence kind: affine_reciprocal or power
    #[arg(long)]
    seq_kind: Option<String>,
    #[arg(long)]
    c_p: Option<f64>,
    #[arg(long)]
    c_q: Option<f64>,
    #[arg(long)]
    r_p: Option<f64>,
    #[arg(long)]
    r_q: Option<f64>,
    /// Comma-separated built-in function names
    #[arg(long, value_delimiter = ',')]
    corpus: Option<Vec<String>>,
    /// Grid points over [0,1] for sup-norm estimates
    #[arg(long)]
    grid: Option<usize>,
    /// Write CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Also write a log-log SVG plot here
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[arg(long)]
    precision: Option<usize>,
}

impl SweepArgs {
    fn resolve(&self, default_corpus: &[&str]) -> Result<ResolvedExperiment, CliError> {
        let mut config = match &self.config {
            Some(path) => load_config_file(path)?,
            None => ExperimentConfig::default(),
        };
        if self.config.is_none() {
            if let Some(l) = self.l {
                config.operator.l = l;
            }
            if let Some(alpha) = self.alpha {
                config.operator.alpha = alpha;
            }
            if let Some(beta) = self.beta {
                config.operator.beta = beta;
            }
            config.operator.n_values = self.n_values.clone();
            if let Some(kind) = &self.seq_kind {
                config.sequences.kind = kind.clone();
            }
            config.sequences.c_p = self.c_p;
            config.sequences.c_q = self.c_q;
            config.sequences.r_p = self.r_p;
            config.sequences.r_q = self.r_q;
            config.corpus = self.corpus.clone();
            config.grid_points = self.grid;
            config.output.csv_path = self.csv.clone();
            config.output.svg_path = self.svg.clone();
            config.output.precision = self.precision;
        }
        resolve(config, default_corpus)
    }
}

#[derive(Parser)]
struct BoundsArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Constant in front of the second-modulus term
    #[arg(long, default_value_t = DEFAULT_SMOOTHNESS_CONSTANT)]
    constant: f64,
}

#[derive(Parser)]
struct SelftestArgs {
    /// Run the reduced suite
    #[arg(long)]
    quick: bool,
}

fn deliver(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write stdout: {e}")))
        }
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    let config = args.operator.config()?;
    if args.mode == EvalMode::BernsteinSchurer && (config.alpha() != 0.0 || config.beta() != 0.0) {
        return Err(CliError::Invalid(
            "bernstein-schurer mode requires alpha = 0 and beta = 0".to_string(),
        ));
    }
    let f = pqss::builtin(&args.function).ok_or_else(|| {
        CliError::Invalid(format!(
            "unknown function {:?}: built-ins are {}",
            args.function,
            pqss::BUILTIN_NAMES.join(", ")
        ))
    })?;
    let xs = match (args.x, args.grid) {
        (Some(x), None) => vec![x],
        (None, Some(points)) => {
            if points < 2 {
                return Err(CliError::Invalid(
                    "grid must have at least 2 points".to_string(),
                ));
            }
            uniform_grid(0.0, 1.0, points)
        }
        (None, None) => {
            return Err(CliError::Invalid(
                "provide an evaluation point (--x) or a grid (--grid)".to_string(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };

    let op = StancuSchurer::new(config).map_err(CliError::from_param)?;
    let mut out = String::from("x,S,f,abs_error\n");
    for &x in &xs {
        let value = match args.mode {
            EvalMode::StancuSchurer => op.apply(&f, x),
            EvalMode::BernsteinSchurer => {
                apply_bernstein_schurer(config.n(), config.l(), config.pq(), &f, x)
            }
        }
        .map_err(CliError::from_param)?;
        let exact = f.eval(x);
        let p = args.precision;
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_num(x, p),
            fmt_num(value, p),
            fmt_num(exact, p),
            fmt_num((value - exact).abs(), p)
        ));
    }
    deliver(&out, None)
}

fn cmd_moments(args: &MomentsArgs) -> Result<(), CliError> {
    let config = args.operator.config()?;
    if args.grid < 2 {
        return Err(CliError::Invalid(
            "grid must have at least 2 points".to_string(),
        ));
    }
    let mut rows = Vec::with_capacity(args.grid);
    for x in uniform_grid(0.0, 1.0, args.grid) {
        let closed = MomentSet::closed(&config, x).map_err(CliError::from_param)?;
        let oracle = if args.oracle {
            Some(MomentSet::bruteforce(&config, x).map_err(CliError::from_param)?)
        } else {
            None
        };
        rows.push((x, closed, oracle));
    }
    let csv = moments_csv(&rows, args.oracle, args.precision);
    deliver(&csv, args.output.as_deref())
}

fn cmd_korovkin(args: &SweepArgs) -> Result<(), CliError> {
    let exp = args.resolve(&[])?;
    let report = run_korovkin(
        &exp.spec,
        &exp.template,
        &exp.n_values,
        exp.grid_points,
        &exp.corpus,
    )
    .map_err(CliError::from_param)?;
    let csv = korovkin_csv(&report, &exp.corpus_names, exp.precision);
    deliver(&csv, exp.csv_path.as_deref())?;
    if let Some(path) = &exp.svg_path {
        let series = korovkin_svg_series(&report, &exp.corpus_names);
        let chart = svg::loglog_chart("sup error vs n (log-log)", &series);
        deliver(&chart, Some(path))?;
    }
    Ok(())
}

const DEFAULT_BOUNDS_CORPUS: [&str; 5] = ["sin_pi", "exp_neg", "square", "abs_half", "sqrt"];

fn cmd_bounds(args: &BoundsArgs) -> Result<(), CliError> {
    let exp = args.sweep.resolve(&DEFAULT_BOUNDS_CORPUS)?;
    if !args.constant.is_finite() || args.constant <= 0.0 {
        return Err(CliError::Invalid(format!(
            "invalid smoothness constant C={}: requires C > 0",
            args.constant
        )));
    }
    let report = run_bound_sweep(
        &exp.spec,
        &exp.template,
        &exp.n_values,
        &exp.corpus,
        exp.grid_points,
        args.constant,
    )
    .map_err(CliError::from_param)?;
    let csv = bounds_csv(&report, exp.precision);
    deliver(&csv, exp.csv_path.as_deref())?;
    if let Some(path) = &exp.svg_path {
        let series = bounds_svg_series(&report);
        let chart = svg::loglog_chart("sup error and thm32 bound vs n (log-log)", &series);
        deliver(&chart, Some(path))?;
    }
    Ok(())
}

fn cmd_selftest(args: &SelftestArgs) -> Result<(), CliError> {
    let results = selftest::run(args.quick);
    let mut all_passed = true;
    let mut out = String::new();
    for group in &results {
        all_passed &= group.passed;
        out.push_str(&format!(
            "{} {} — {}\n",
            if group.passed { "PASS" } else { "FAIL" },
            group.name,
            group.detail
        ));
    }
    deliver(&out, None)?;
    if all_passed {
        Ok(())
    } else {
        Err(CliError::SelftestFailed)
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Moments(args) => cmd_moments(args),
        Command::Korovkin(args) => cmd_korovkin(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Selftest(args) => cmd_selftest(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

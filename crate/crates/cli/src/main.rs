//! `seqrac` — command-line runner for the sequential communication-game
//! toolkit.
//!
//! Every subcommand reproduces one result family (classical baseline,
//! trade-off boundary, certification reports, see-saw optimizations) as
//! CSV or JSON plot data, deterministically for fixed flags and seed.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage/validation error,
//! 3 regression mismatch against frozen reference values, 4 optimizer
//! non-convergence.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use seqrac_core::report::{csv_row, json_array, json_object, Scalar, BOUNDARY_CSV_HEADER};
use seqrac_core::seesaw::DIMSWEEP_CSV_HEADER;
use seqrac_core::{
    boundary_audit, boundary_pac, classical_bruteforce, classical_optimal_success, dimension_sweep,
    eta_critical, table1_report, target_sweep, tolerances, tradeoff_curve, CertifyRow,
    DimSweepMode, GameDimension, NoiseParams, SeesawConfig, SolverOptions,
};

use config::Settings;

/// Errors surfaced to the process exit code.
#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error("{0}")]
    Core(#[from] seqrac_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Flag(String),
    #[error("no see-saw restart converged")]
    NoConvergedRestart,
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Io(_) => 1,
            AppError::Flag(_) => 2,
            AppError::NoConvergedRestart => 4,
            AppError::Core(e) => match e {
                seqrac_core::Error::RegressionMismatch { .. } => 3,
                seqrac_core::Error::NoConvergence { .. } => 4,
                _ => 2,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// Sharpness flag: a number or the word `critical` (resolved per
/// dimension to `η_c(d)`).
#[derive(Debug, Clone, Copy)]
enum EtaArg {
    Value(f64),
    Critical,
}

impl FromStr for EtaArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "critical" {
            return Ok(EtaArg::Critical);
        }
        s.parse::<f64>()
            .map(EtaArg::Value)
            .map_err(|_| format!("expected a number or `critical`, got `{s}`"))
    }
}

impl EtaArg {
    fn resolve(self, dim: GameDimension) -> f64 {
        match self {
            EtaArg::Value(v) => v,
            EtaArg::Critical => eta_critical(dim),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "seqrac",
    version,
    about = "Numerics for a sequential one-sender/two-receiver communication game"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format (default csv).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Worker thread cap (default: SEQRAC_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// key=value defaults for any long flag, overridden by the command
    /// line.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classical benchmark value, with a brute-force oracle for small d.
    Classical {
        /// Alphabet size (2..=6).
        #[arg(long)]
        d: Option<usize>,
    },
    /// Optimal qubit trade-off curve as plot data.
    Boundary {
        /// Number of sharpness grid points (>= 2).
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Random-strategy audit of the trade-off boundary.
    Audit {
        /// Number of random strategies to test.
        #[arg(long)]
        samples: Option<usize>,
        /// RNG seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Certification bounds for one noise setting.
    Certify {
        /// Preparation visibility in (0, 1].
        #[arg(long)]
        p1: Option<f64>,
        /// First receiver's measurement visibility in (0, 1].
        #[arg(long)]
        p2: Option<f64>,
        /// Second receiver's measurement visibility in (0, 1].
        #[arg(long)]
        p3: Option<f64>,
        /// Sharpness the devices aim for.
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Recompute the benchmark comparison table against frozen values.
    Table1,
    /// Certification bounds as a function of the sharpness target.
    SweepEta {
        /// Preparation visibility in (0, 1].
        #[arg(long)]
        p1: Option<f64>,
        /// First receiver's measurement visibility in (0, 1].
        #[arg(long)]
        p2: Option<f64>,
        /// Second receiver's measurement visibility in (0, 1].
        #[arg(long)]
        p3: Option<f64>,
        /// Number of sharpness-target grid points (>= 2).
        #[arg(long)]
        steps: Option<usize>,
    },
    /// See-saw optimization at fixed dimension and sharpness.
    Seesaw {
        /// Alphabet size (2..=6).
        #[arg(long)]
        d: Option<usize>,
        /// Sharpness: a number in [0, 1] or `critical`.
        #[arg(long)]
        eta: Option<EtaArg>,
        /// Number of random restarts.
        #[arg(long)]
        restarts: Option<usize>,
        /// Convergence tolerance on the replayed probabilities.
        #[arg(long)]
        tol: Option<f64>,
        /// RNG seed (restart r uses stream r).
        #[arg(long)]
        seed: Option<u64>,
        /// Iteration budget per restart.
        #[arg(long)]
        max_iters: Option<usize>,
    },
    /// Classical/critical-sharpness/sharp comparison across dimensions.
    Dimsweep {
        /// Smallest alphabet size.
        #[arg(long)]
        dmin: Option<usize>,
        /// Largest alphabet size.
        #[arg(long)]
        dmax: Option<usize>,
        /// Number of random restarts per see-saw run.
        #[arg(long)]
        restarts: Option<usize>,
        /// Convergence tolerance on the replayed probabilities.
        #[arg(long)]
        tol: Option<f64>,
        /// RNG seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Iteration budget per restart.
        #[arg(long)]
        max_iters: Option<usize>,
    },
}

/// A rendered result table: column names plus typed rows.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Scalar>>,
}

impl Table {
    /// Columns from a pinned comma-separated header string.
    fn with_header(header: &'static str) -> Self {
        Self { columns: header.split(',').collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Scalar>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => {
                let mut out = String::new();
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&csv_row(row));
                    out.push('\n');
                }
                out
            }
            OutputFormat::Json => {
                let objects: Vec<String> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let pairs: Vec<(&str, Scalar)> = self
                            .columns
                            .iter()
                            .zip(row.iter())
                            .map(|(&k, v)| (k, v.clone()))
                            .collect();
                        json_object(&pairs)
                    })
                    .collect();
                let mut out = json_array(&objects);
                out.push('\n');
                out
            }
        }
    }
}

fn certify_row_scalars(row: &CertifyRow) -> Vec<Scalar> {
    vec![
        Scalar::Float(row.p1),
        Scalar::Float(row.p2),
        Scalar::Float(row.p3),
        Scalar::Float(row.eta_target),
        Scalar::Float(row.p_ab),
        Scalar::Float(row.p_ac),
        Scalar::Float(row.eta_lower),
        Scalar::MaybeFloat(row.eta_upper),
        Scalar::MaybeFloat(row.delta),
        Scalar::MaybeFloat(row.delta_star_fixture),
    ]
}

fn cmd_classical(settings: &Settings, d: Option<usize>) -> Result<Table, AppError> {
    let d = settings.resolve(d, "d", 2usize)?;
    let dim = GameDimension::new(d)?;
    let formula = classical_optimal_success(dim);
    let mut table = Table::with_header("d,formula,bruteforce,match");
    let (oracle, verdict) = match classical_bruteforce(dim) {
        Ok(outcome) => {
            let verdict = if outcome.joint == formula { "true" } else { "false" };
            (Some(outcome.joint), verdict)
        }
        // Oracle intractable for this d; the formula value stands alone.
        Err(_) => (None, "skipped"),
    };
    table.push(vec![
        Scalar::Int(d as i64),
        Scalar::Float(formula),
        Scalar::MaybeFloat(oracle),
        Scalar::Text(verdict.to_string()),
    ]);
    Ok(table)
}

fn cmd_boundary(settings: &Settings, steps: Option<usize>) -> Result<Table, AppError> {
    let steps = settings.resolve(steps, "steps", 101usize)?;
    let curve = tradeoff_curve(steps)?;
    let dim = GameDimension::new(2).expect("qubit dimension is valid");
    let classical_ab = 0.5 * (1.0 + 1.0 / 2.0);
    let classical_joint = classical_optimal_success(dim);
    let mut table = Table::with_header(BOUNDARY_CSV_HEADER);
    for point in curve {
        table.push(vec![
            Scalar::Float(point.eta),
            Scalar::Float(point.p_ab),
            Scalar::Float(point.p_ac),
            Scalar::Float(boundary_pac(point.p_ab)?),
            Scalar::Float(classical_ab),
            Scalar::Float(classical_joint),
        ]);
    }
    Ok(table)
}

fn cmd_audit(settings: &Settings, samples: Option<usize>, seed: Option<u64>) -> Result<Table, AppError> {
    let samples = settings.resolve(samples, "samples", 10_000usize)?;
    let seed = settings.resolve(seed, "seed", 0u64)?;
    let max_violation = boundary_audit(samples, seed);
    let mut table = Table::with_header("samples,seed,max_violation,tolerance,pass");
    table.push(vec![
        Scalar::Int(samples as i64),
        Scalar::Int(seed as i64),
        Scalar::Float(max_violation),
        Scalar::Float(tolerances::AUDIT_VIOLATION),
        Scalar::Bool(max_violation <= tolerances::AUDIT_VIOLATION),
    ]);
    Ok(table)
}

fn resolve_noise(
    settings: &Settings,
    p1: Option<f64>,
    p2: Option<f64>,
    p3: Option<f64>,
) -> Result<NoiseParams, AppError> {
    let p1 = settings.require(p1, "p1")?;
    let p2 = settings.require(p2, "p2")?;
    let p3 = settings.require(p3, "p3")?;
    Ok(NoiseParams::new(p1, p2, p3)?)
}

fn cmd_certify(
    settings: &Settings,
    p1: Option<f64>,
    p2: Option<f64>,
    p3: Option<f64>,
    eta: Option<f64>,
) -> Result<Table, AppError> {
    let noise = resolve_noise(settings, p1, p2, p3)?;
    let eta = settings.require(eta, "eta")?;
    let row = CertifyRow::compute(&noise, eta)?;
    let mut table = Table::with_header(CertifyRow::CSV_HEADER);
    table.push(certify_row_scalars(&row));
    Ok(table)
}

fn cmd_table1() -> Result<Table, AppError> {
    let rows = table1_report()?;
    let mut table = Table::with_header(CertifyRow::CSV_HEADER);
    for row in &rows {
        table.push(certify_row_scalars(row));
    }
    Ok(table)
}

fn cmd_sweep_eta(
    settings: &Settings,
    p1: Option<f64>,
    p2: Option<f64>,
    p3: Option<f64>,
    steps: Option<usize>,
) -> Result<Table, AppError> {
    let noise = resolve_noise(settings, p1, p2, p3)?;
    let steps = settings.resolve(steps, "steps", 101usize)?;
    if steps < 2 {
        return Err(AppError::Flag(format!("--steps must be at least 2, got {steps}")));
    }
    let grid: Vec<f64> = (0..steps).map(|k| k as f64 / (steps - 1) as f64).collect();
    let rows = target_sweep(&noise, &grid)?;
    let mut table = Table::with_header(CertifyRow::CSV_HEADER);
    for row in &rows {
        table.push(certify_row_scalars(row));
    }
    Ok(table)
}

fn solver_options(
    settings: &Settings,
    restarts: Option<usize>,
    tol: Option<f64>,
    seed: Option<u64>,
    max_iters: Option<usize>,
) -> Result<SolverOptions, AppError> {
    let defaults = SolverOptions::default();
    Ok(SolverOptions {
        restarts: settings.resolve(restarts, "restarts", defaults.restarts)?,
        max_iters: settings.resolve(max_iters, "max-iters", defaults.max_iters)?,
        tol: settings.resolve(tol, "tol", defaults.tol)?,
        seed: settings.resolve(seed, "seed", defaults.seed)?,
    })
}

const SEESAW_HEADER: &str =
    "d,eta,p_barun,p_chhanda,p_total,converged,iterations,best_restart,converged_restarts";

fn cmd_seesaw(
    settings: &Settings,
    d: Option<usize>,
    eta: Option<EtaArg>,
    restarts: Option<usize>,
    tol: Option<f64>,
    seed: Option<u64>,
    max_iters: Option<usize>,
) -> Result<(Table, bool), AppError> {
    let d = settings.require(d, "d")?;
    let dim = GameDimension::new(d)?;
    let eta: EtaArg = settings.require(eta, "eta")?;
    let eta = eta.resolve(dim);
    let options = solver_options(settings, restarts, tol, seed, max_iters)?;
    let result = seqrac_core::seesaw_run(&SeesawConfig { dim, eta, options })?;
    let mut table = Table::with_header(SEESAW_HEADER);
    table.push(vec![
        Scalar::Int(d as i64),
        Scalar::Float(eta),
        Scalar::Float(result.p_ab),
        Scalar::Float(result.p_ac),
        Scalar::Float(result.p_joint),
        Scalar::Bool(result.converged),
        Scalar::Int(result.iterations as i64),
        Scalar::Int(result.best_restart as i64),
        Scalar::Int(result.converged_restarts as i64),
    ]);
    Ok((table, result.converged_restarts > 0))
}

fn cmd_dimsweep(
    settings: &Settings,
    dmin: Option<usize>,
    dmax: Option<usize>,
    restarts: Option<usize>,
    tol: Option<f64>,
    seed: Option<u64>,
    max_iters: Option<usize>,
) -> Result<Table, AppError> {
    let dmin = settings.resolve(dmin, "dmin", 2usize)?;
    let dmax = settings.resolve(dmax, "dmax", 6usize)?;
    let options = solver_options(settings, restarts, tol, seed, max_iters)?;
    let rows = dimension_sweep(dmin, dmax, &DimSweepMode::ALL, options)?;
    let mut table = Table::with_header(DIMSWEEP_CSV_HEADER);
    for row in &rows {
        table.push(vec![
            Scalar::Int(row.d as i64),
            Scalar::Text(row.mode.label().to_string()),
            Scalar::MaybeFloat(row.eta),
            Scalar::Float(row.p_barun),
            Scalar::Float(row.p_chhanda),
            Scalar::Float(row.p_total),
            Scalar::Bool(row.converged),
            Scalar::Int(row.iterations as i64),
        ]);
    }
    // Per-row advantage check: every quantum total should beat its
    // classical counterpart; anything else is worth a loud diagnostic.
    for row in &rows {
        if row.mode != DimSweepMode::Classical {
            let classical = classical_optimal_success(GameDimension::new(row.d)?);
            if row.p_total <= classical {
                eprintln!(
                    "warning: d={} mode={} total {:.6} does not exceed classical {:.6}",
                    row.d,
                    row.mode.label(),
                    row.p_total,
                    classical
                );
            }
        }
    }
    Ok(table)
}

fn emit(cli: &Cli, settings: &Settings, table: &Table) -> Result<(), AppError> {
    let format = match cli.format {
        Some(f) => f,
        None => settings.get::<OutputFormat>("format")?.unwrap_or(OutputFormat::Csv),
    };
    let rendered = table.render(format);
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), AppError> {
    let settings = Settings::load(cli.config.as_deref())?;

    // Thread cap: flag, else config, else SEQRAC_THREADS, else rayon's
    // default.  Results never depend on the worker count.
    let threads = match cli.threads {
        Some(n) => Some(n),
        None => match settings.get::<usize>("threads")? {
            Some(n) => Some(n),
            None => match std::env::var("SEQRAC_THREADS") {
                Ok(s) => Some(s.parse::<usize>().map_err(|_| {
                    AppError::Flag(format!("SEQRAC_THREADS: cannot parse `{s}`"))
                })?),
                Err(_) => None,
            },
        },
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(AppError::Flag("thread count must be at least 1".to_string()));
        }
        // Ignore the error from a pool that is already installed.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }

    // A seesaw run where no restart converged still emits its partial
    // row for inspection, then fails with the non-convergence code.
    let mut deferred: Option<AppError> = None;
    let table = match &cli.command {
        Command::Classical { d } => cmd_classical(&settings, *d)?,
        Command::Boundary { steps } => cmd_boundary(&settings, *steps)?,
        Command::Audit { samples, seed } => cmd_audit(&settings, *samples, *seed)?,
        Command::Certify { p1, p2, p3, eta } => cmd_certify(&settings, *p1, *p2, *p3, *eta)?,
        Command::Table1 => cmd_table1()?,
        Command::SweepEta { p1, p2, p3, steps } => {
            cmd_sweep_eta(&settings, *p1, *p2, *p3, *steps)?
        }
        Command::Seesaw { d, eta, restarts, tol, seed, max_iters } => {
            let (table, any_converged) =
                cmd_seesaw(&settings, *d, *eta, *restarts, *tol, *seed, *max_iters)?;
            if !any_converged {
                deferred = Some(AppError::NoConvergedRestart);
            }
            table
        }
        Command::Dimsweep { dmin, dmax, restarts, tol, seed, max_iters } => {
            cmd_dimsweep(&settings, *dmin, *dmax, *restarts, *tol, *seed, *max_iters)?
        }
    };
    emit(cli, &settings, &table)?;
    match deferred {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

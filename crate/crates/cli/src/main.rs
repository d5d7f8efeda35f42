//! `alpha-harmonic`: gradient constants, Landau radii and verification for α-harmonic
//! mappings on the unit ball.
//!
//! Exit codes: 0 success, 1 verification failure or numerical breakdown, 2 usage error.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use alpha_harmonic::sphere::SphereRule;
use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{Run, TableKind};
use crate::config::{Number, UsageError};
use crate::output::Table;

#[derive(Parser, Debug)]
#[command(name = "alpha-harmonic", version, about = "Gradient constants and Landau radii for alpha-harmonic mappings")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Dimension of the ball (at least 3).
    #[arg(long, global = true, default_value_t = 3)]
    n: usize,

    /// The parameter α < 1, as a decimal or a ratio `a/b`.
    #[arg(long, global = true, default_value = "0", allow_hyphen_values = true)]
    alpha: String,

    /// Comma-separated data exponents p ∈ [1, ∞]; `inf` and `a/b` accepted.
    #[arg(long, global = true, conflicts_with = "q")]
    p: Option<String>,

    /// Comma-separated conjugate exponents q ∈ [1, ∞]; `a/b` hits thresholds exactly. Defaults to q = 1.
    #[arg(long, global = true)]
    q: Option<String>,

    /// Comma-separated bounds M on the data (Landau radius, n_star).
    #[arg(long = "M", global = true, default_value = "1")]
    m: String,

    /// Comma-separated values of |x|.
    #[arg(long, global = true, default_value = "0")]
    x: String,

    /// Direction of x: `radial` (e₁), `tangential` (e₂), `e<i>`, `beta:<angle>` or coordinates.
    #[arg(long, global = true, default_value = "radial", allow_hyphen_values = true)]
    dir: String,

    /// Boundary data: coordinate:<i> | signed[:<dir>] | cap:<h>[:<dir>] | constant:<c,..> |
    /// linear:identity | linear:normalized | linear:<row-major entries> | csv:<path>.
    #[arg(long, global = true, default_value = "coordinate:0", allow_hyphen_values = true)]
    phi: String,

    /// Sphere integration rule.
    #[arg(long, global = true, value_enum, default_value_t = RuleKind::Gauss)]
    rule: RuleKind,

    /// Gauss-Legendre degree d (d radial × 2d angular nodes); default 256.
    #[arg(long, global = true)]
    degree: Option<usize>,

    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    samples: usize,

    /// Seed of every Monte Carlo estimate.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Relative tolerance of the agreement columns.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Relative perturbation of C_{n,α} in the kernel-mass suite.
    #[arg(long, global = true, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
    inject_c_perturbation: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RuleKind {
    Gauss,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regime, closed-form supremum, J term and gradient coefficient per (q, |x|).
    Constants {
        /// Also maximize over a β-sweep with this many angles and report the gap.
        #[arg(long, num_args = 0..=1, default_missing_value = "181")]
        brute: Option<usize>,
    },
    /// Certified gradient bound for --phi against the measured gradient at x = |x|·dir.
    Bound,
    /// Landau radius r₀ and covering radius R₀ for each M.
    Landau,
    /// Run the verification suites; exit 1 naming any failing suite.
    Verify {
        /// Comma-separated subset of suites.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Plottable series of the coefficient or of the Landau functions.
    Table {
        #[arg(long, value_enum, default_value_t = TableKind::Coefficient)]
        kind: TableKind,
        /// Number of grid points on [0, 1).
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
}

/// Verification failed; reported with exit code 1.
#[derive(Debug, thiserror::Error)]
#[error("verification failed in suite(s): {}", .0.join(", "))]
struct VerificationFailed(Vec<&'static str>);

impl Global {
    fn rule(&self) -> Result<SphereRule> {
        match self.rule {
            RuleKind::Gauss => {
                let d = self.degree.unwrap_or(256);
                if d == 0 {
                    return Err(UsageError("--degree must be positive".into()).into());
                }
                Ok(SphereRule::gauss(d, 2 * d))
            }
            RuleKind::MonteCarlo => Ok(SphereRule::monte_carlo(self.samples, self.seed)),
        }
    }

    fn run(&self) -> Result<Run> {
        let alpha = Number::parse(&self.alpha)?;
        let params = config::params(self.n, &alpha)?;
        let pairs = match (&self.p, &self.q) {
            (Some(p), _) => config::parse_list(p)?.iter().map(|v| config::exponent(Some(v), None)).collect::<Result<_>>()?,
            (None, Some(q)) => config::parse_list(q)?.iter().map(|v| config::exponent(None, Some(v))).collect::<Result<_>>()?,
            (None, None) => vec![config::exponent(None, None)?],
        };
        let ms: Vec<f64> = config::parse_list(&self.m)?.iter().map(|v| v.value).collect();
        let xs: Vec<f64> = config::parse_list(&self.x)?.iter().map(|v| v.value).collect();
        if ms.is_empty() || xs.is_empty() || pairs.is_empty() {
            return Err(UsageError("--M, --x and --p/--q need at least one value".into()).into());
        }
        if let Some(t) = xs.iter().find(|t| !(**t >= 0.0 && **t < 1.0)) {
            return Err(UsageError(format!("|x| must lie in [0, 1), got {t}")).into());
        }
        if !(self.tol > 0.0) {
            return Err(UsageError("--tol must be positive".into()).into());
        }
        Ok(Run {
            params,
            alpha,
            pairs,
            ms,
            xs,
            dir: config::direction(&self.dir, self.n)?,
            rule: self.rule()?,
            tol: self.tol,
        })
    }

    fn emit(&self, table: &Table) -> Result<()> {
        let sink: Box<dyn Write> = match &self.out {
            Some(path) => Box::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?),
            None => Box::new(io::stdout().lock()),
        };
        let mut sink = BufWriter::new(sink);
        match self.format {
            Format::Json => table.write_json(&mut sink)?,
            Format::Csv => table.write_csv(&mut sink)?,
        }
        sink.flush()?;
        Ok(())
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Constants { brute } => g.emit(&commands::constants(&g.run()?, *brute)?),
        Command::Bound => {
            let run = g.run()?;
            let phi = config::boundary(&g.phi, &run.params)?;
            g.emit(&commands::bound(&run, &phi)?)
        }
        Command::Landau => g.emit(&commands::landau(&g.run()?)?),
        Command::Table { kind, points } => {
            if *points == 0 {
                return Err(UsageError("--points must be positive".into()).into());
            }
            g.emit(&commands::table(&g.run()?, *kind, *points)?)
        }
        Command::Verify { only } => {
            if let Some(bad) = only.iter().find(|o| !verify::SUITES.iter().any(|(name, _)| name == o)) {
                let names: Vec<&str> = verify::SUITES.iter().map(|(name, _)| *name).collect();
                return Err(UsageError(format!("unknown suite {bad:?}; available: {}", names.join(", "))).into());
            }
            let cfg = verify::VerifyConfig { seed: g.seed, samples: g.samples, c_perturbation: g.inject_c_perturbation };
            let (table, failed) = verify::run(&cfg, only);
            g.emit(&table)?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(VerificationFailed(failed).into())
            }
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use alpha_harmonic::Error as E;
    if err.downcast_ref::<UsageError>().is_some() || err.downcast_ref::<io::Error>().is_some() {
        return 2;
    }
    match err.downcast_ref::<E>() {
        Some(E::Domain(_) | E::BoundaryData(_) | E::RegimeMismatch(_) | E::Io(_) | E::Csv(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

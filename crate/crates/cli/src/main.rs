//! `ckgeo`: tables, curvature, contraction and geodesic runs as JSON or CSV.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod commands;
mod error;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use commands::{AlgebraArgs, ContractArgs, CurvatureArgs, GeodesicArgs, Table2Args, Table3Args};
use error::CliResult;
use output::{emit, Format};

/// Name of the seeded generator used for every random draw.
pub const PRNG: &str = "ChaCha8";

#[derive(Debug, Parser)]
#[command(
    name = "ckgeo",
    version,
    about = "Cayley-Klein algebras, spaces and their deformations"
)]
struct Cli {
    /// Output format; with csv the run config and summary go to stderr as JSON.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    output: Format,

    /// Seed of the ChaCha8 generator used for random sampling.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Verification tolerance; each command documents its default.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Run batch work on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
enum Command {
    /// Structure constants, classification and symmetric spaces of so_κ(N+1).
    Algebra(AlgebraArgs),
    /// The nine constant-curvature 3D spaces with verified curvatures.
    Table2(Table2Args),
    /// The deformed 3D spaces of non-constant curvature.
    Table3(Table3Args),
    /// Sectional and scalar curvature of a chosen metric.
    Curvature(CurvatureArgs),
    /// Geodesic flow on a deformed space with invariant monitoring.
    Geodesic(GeodesicArgs),
    /// Inönü-Wigner contraction series.
    Contract(ContractArgs),
}

/// Everything that determines a run; echoed into every output document.
#[derive(Debug, Serialize)]
pub struct RunConfig<'a> {
    pub output: Format,
    pub seed: u64,
    pub tol: f64,
    pub execution: ckgeo::Execution,
    pub prng: &'static str,
    #[serde(flatten)]
    command: &'a Command,
}

/// Global settings handed to each command.
#[derive(Debug, Clone, Copy)]
pub struct Globals {
    pub seed: u64,
    pub tol: f64,
    pub exec: ckgeo::Execution,
}

fn run(cli: &Cli) -> CliResult<bool> {
    let tol = cli.tol.unwrap_or(match cli.command {
        Command::Algebra(_) => commands::algebra::DEFAULT_TOL,
        Command::Table2(_) | Command::Table3(_) | Command::Curvature(_) => {
            commands::tables::DEFAULT_TOL
        }
        Command::Geodesic(_) => commands::geodesic::DEFAULT_TOL,
        Command::Contract(_) => commands::contract::DEFAULT_TOL,
    });
    if tol.is_nan() || tol < 0.0 {
        return Err(error::CliError::Usage(format!(
            "--tol {tol} must be non-negative"
        )));
    }
    let exec = if cli.sequential {
        ckgeo::Execution::Sequential
    } else {
        ckgeo::Execution::Parallel
    };
    let g = Globals {
        seed: cli.seed,
        tol,
        exec,
    };
    let report = match &cli.command {
        Command::Algebra(a) => commands::algebra::run(a, &g)?,
        Command::Table2(a) => commands::tables::table2(a, &g)?,
        Command::Table3(a) => commands::tables::table3(a, &g)?,
        Command::Curvature(a) => commands::curvature::run(a, &g)?,
        Command::Geodesic(a) => commands::geodesic::run(a, &g)?,
        Command::Contract(a) => commands::contract::run(a, &g)?,
    };
    let config = RunConfig {
        output: cli.output,
        seed: cli.seed,
        tol,
        execution: exec,
        prng: PRNG,
        command: &cli.command,
    };
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    emit(cli.output, &config, &report, &mut out, &mut err)?;
    out.flush()?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

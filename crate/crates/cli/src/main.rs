//! `horizon` — evaluate and sweep horizon-qubit concurrences from the
//! command line, and cross-verify the closed forms against the matrix
//! oracle.
//!
//! Subcommands:
//! * `point`  — evaluate one parameter point and print a record per sector.
//! * `sweep`  — evaluate a parameter grid into CSV (optionally SVG).
//! * `verify` — run the closed-form-vs-oracle report; exit 2 on any miss.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.

mod config;
mod report;
mod rows;
mod verify;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "horizon",
    version,
    about = "Concurrence of horizon-shared qubit pairs: closed forms, sweeps, and oracle checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a single parameter point and print one record per sector
    Point(CommonArgs),
    /// Evaluate a parameter grid and write CSV (and/or a quick-look SVG)
    Sweep(CommonArgs),
    /// Compare closed forms against the matrix oracle over a grid; write a
    /// CSV report and exit nonzero when anything misses the tolerance
    Verify(CommonArgs),
}

/// One flag set shared by all subcommands; each command validates the subset
/// it actually consumes.
#[derive(Args, Clone)]
struct CommonArgs {
    /// Decoherence channel on the static qubit: none, pd, pf or bf.
    /// `verify` reads this as a restriction (none = check everything)
    #[arg(long, default_value = "none")]
    channel: String,

    /// Sector to evaluate: ai-bi, aii-bii, ai-bii or aii-bi.
    /// Repeatable; all four when omitted
    #[arg(long = "sector")]
    sectors: Vec<String>,

    /// State mixing parameter in [0, 1]
    #[arg(long)]
    p: Option<f64>,

    /// Acceleration parameter of observer A, radians in [0, π/4]
    #[arg(long)]
    ra: Option<f64>,

    /// Acceleration parameter of observer B, radians in [0, π/4]
    #[arg(long)]
    rb: Option<f64>,

    /// Mode frequency (>0) for the thermal frame route
    #[arg(long)]
    omega: Option<f64>,

    /// Hawking temperature (>= 0, `inf` allowed) for the thermal frame route
    #[arg(long)]
    temp: Option<f64>,

    /// Tie the two acceleration parameters together (r_b := r_a)
    #[arg(long)]
    lock_rab: bool,

    /// Noise strength in [0, 1]; requires a channel other than none
    #[arg(long)]
    k: Option<f64>,

    /// Swept axis `<axis>=<start>:<stop>:<n>` with n >= 2 points;
    /// axes: p, ra, rb, omega, temp, k. Repeatable
    #[arg(long = "grid")]
    grids: Vec<String>,

    /// Output path (required for sweep; optional report path for verify)
    #[arg(long)]
    out: Option<std::path::PathBuf>,

    /// What sweep writes: csv, svg or both
    #[arg(long, default_value = "csv")]
    emit: String,

    /// Verification tolerance on |closed − oracle|
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

/// Failure modes mapped onto the exit-code contract.
enum CliError {
    Usage(String),
    Verify,
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verify => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<horizon_core::Error> for CliError {
    // every library-level rejection reachable from here is a bad argument
    fn from(e: horizon_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() {
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            print!("{e}");
            std::process::exit(0);
        }
        eprint!("{e}");
        std::process::exit(1);
    });

    let outcome = match cli.cmd {
        Cmd::Point(args) => run_point(&args),
        Cmd::Sweep(args) => run_sweep(&args),
        Cmd::Verify(args) => verify::run(&args),
    };
    match outcome {
        Ok(()) => {}
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("usage error: {msg}"),
                CliError::Verify => eprintln!("verification failed"),
                CliError::Io(msg) => eprintln!("I/O error: {msg}"),
            }
            std::process::exit(e.code());
        }
    }
}

fn run_point(args: &CommonArgs) -> Result<(), CliError> {
    let scan = config::resolve_point(args)?;
    for row in rows::evaluate(&scan)? {
        println!(
            "channel={} sector={} p={} ra={} rb={} analytic={} numeric={} delta={:.3e}",
            row.channel_label(),
            row.sector,
            report::fmt_float(row.p),
            report::fmt_float(row.ra),
            report::fmt_float(row.rb),
            report::fmt_float(row.analytic),
            report::fmt_float(row.numeric),
            (row.analytic - row.numeric).abs(),
        );
    }
    Ok(())
}

fn run_sweep(args: &CommonArgs) -> Result<(), CliError> {
    let scan = config::resolve_sweep(args)?;
    let rows = rows::evaluate(&scan)?;
    report::emit(&scan, &rows)
}

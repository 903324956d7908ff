//! `ssqw` — Fisher information and measurement-compatibility numbers for
//! split-step quantum walks, from the command line.
//!
//! Subcommands: `qfim` (single point), `scan` (parameter grids to CSV/JSON),
//! `avg-fisher`, `compare`, `poles`, `selfcheck`. Angles are radians unless
//! `--deg` is given. Exit codes: 0 success, 2 usage error, 3 numerical
//! failure. `SSQW_THREADS` caps scan parallelism.

mod commands;
mod output;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ssqw",
    version,
    about = "Split-step quantum walk metrology toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum MethodArg {
    Finite,
    Asymptotic,
    Closed,
    Oracle,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum QuantityArg {
    F11,
    F22,
    F12,
    Omega,
    Advantage,
    Incompat,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Text,
}

#[derive(clap::Args)]
struct AngleArgs {
    /// First coin angle (radians; degrees with --deg)
    #[arg(long)]
    theta1: f64,
    /// Second coin angle (radians; degrees with --deg)
    #[arg(long)]
    theta2: f64,
    /// Interpret angles and ranges as degrees
    #[arg(long)]
    deg: bool,
}

#[derive(clap::Args)]
struct BlochArgs {
    /// Initial coin Bloch x-component (default: sqrt(1 - r2^2))
    #[arg(long)]
    r1: Option<f64>,
    /// Initial coin Bloch y-component (the only one Fisher depends on)
    #[arg(long, default_value_t = 0.0)]
    r2: f64,
    /// Initial coin Bloch z-component (default: 0)
    #[arg(long)]
    r3: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Fisher matrix, curvature and incompatibility at one parameter point
    Qfim {
        #[command(flatten)]
        angles: AngleArgs,
        #[command(flatten)]
        bloch: BlochArgs,
        /// Step count (finite/oracle methods)
        #[arg(long, default_value_t = 100)]
        t: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Evaluate a quantity over a (theta1, theta2) grid and write a file
    Scan {
        #[arg(long, value_enum)]
        quantity: QuantityArg,
        /// Grid size as N1xN2 (theta1-major output order)
        #[arg(long)]
        grid: String,
        /// theta1 range as a:b (default 0:6.283185307179586)
        #[arg(long)]
        range1: Option<String>,
        /// theta2 range as a:b
        #[arg(long)]
        range2: Option<String>,
        #[arg(long, default_value_t = 0.0)]
        r2: f64,
        /// Step count (incompat quantity only)
        #[arg(long, default_value_t = 100)]
        t: usize,
        /// Output path; written via temp file + atomic rename
        #[arg(long)]
        out: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Interpret ranges as degrees
        #[arg(long)]
        deg: bool,
    },
    /// theta1-averaged F11: closed expression vs numeric quadrature
    AvgFisher {
        #[arg(long)]
        theta2: f64,
        #[arg(long)]
        deg: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Joint-precision products of split-step vs ordinary walks
    Compare {
        /// Print only the golden-ratio crossover angle eta
        #[arg(long)]
        eta: bool,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        theta1: f64,
        #[arg(long, default_value_t = std::f64::consts::PI)]
        theta2: f64,
        #[arg(long)]
        deg: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Contour-integral poles z1..z4 with inside/outside flags
    Poles {
        #[command(flatten)]
        angles: AngleArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Cross-validate the three computation routes against each other
    Selfcheck,
}

/// Errors mapped onto process exit codes.
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl From<ssqw_core::Error> for CliError {
    fn from(e: ssqw_core::Error) -> Self {
        match e {
            ssqw_core::Error::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn init_thread_pool() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("SSQW_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Usage(format!("SSQW_THREADS = {v:?} is not a thread count")))?;
        if n > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = init_thread_pool().and_then(|()| match cli.command {
        Command::Qfim {
            angles,
            bloch,
            t,
            method,
            format,
        } => commands::qfim(&angles, &bloch, t, method, format),
        Command::Scan {
            quantity,
            grid,
            range1,
            range2,
            r2,
            t,
            out,
            format,
            deg,
        } => commands::scan(quantity, &grid, range1, range2, r2, t, &out, format, deg),
        Command::AvgFisher {
            theta2,
            deg,
            format,
        } => commands::avg_fisher(theta2, deg, format),
        Command::Compare {
            eta,
            theta1,
            theta2,
            deg,
            format,
        } => commands::compare(eta, theta1, theta2, deg, format),
        Command::Poles { angles, format } => commands::poles(&angles, format),
        Command::Selfcheck => commands::selfcheck(),
    });
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

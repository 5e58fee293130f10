mod commands;
mod output;

use std::io;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pstirling::{DistributionSpec, Rational};

use crate::output::{write_records, Format};

/// Exact probabilistic Stirling numbers: tables, identity checks and
/// Monte Carlo cross-checks.
#[derive(Debug, Parser)]
#[command(name = "pstirling", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a table of exact values (CSV by default).
    Table {
        kind: TableKind,
        #[command(flatten)]
        params: Params,
    },
    /// Run an identity suite (JSON lines by default). Exit 1 on any mismatch.
    Verify {
        suite: Suite,
        #[command(flatten)]
        params: Params,
    },
    /// Compare seeded Monte Carlo estimates of E S_k^n with exact values.
    McCheck {
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Stirling2,
    Stirling1,
    Cnn,
    Sy,
    Bell,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Corollary8,
    Theorem1,
    Theorem9,
    Theorem10,
    Theorem11,
    Theorem12,
    Gf,
    Paths,
    BernoulliClassic,
}

#[derive(Debug, Default, Args)]
pub struct Params {
    /// Step law, e.g. `exp`, `poisson:1/2`, `shift:1:geom:1/3`, `finite:0:1/2,2:1/2`.
    #[arg(long)]
    pub dist: Option<DistributionSpec>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Shift `num/den`; may be repeated for suites.
    #[arg(long, value_name = "NUM/DEN", allow_negative_numbers = true)]
    pub x: Vec<Rational>,
    #[arg(long = "N")]
    pub upper: Option<usize>,
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
    #[arg(long = "N-max")]
    pub upper_max: Option<usize>,
    #[arg(long = "k-max")]
    pub k_max: Option<usize>,
    /// Appell family: `bernoulli`, `euler`, `hermite` or `moment:<dist>`.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<Rational>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<Rational>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Emit a CSV header row.
    #[arg(long)]
    pub header: bool,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub z: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] pstirling::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (outcome, params, default_format) = match cli.command {
        Command::Table { kind, params } => (commands::table(kind, &params)?, params, Format::Csv),
        Command::Verify { suite, params } => (commands::verify(suite, &params)?, params, Format::Json),
        Command::McCheck { params } => (commands::mc_check(&params)?, params, Format::Csv),
    };
    let format = params.format.unwrap_or(default_format);
    write_records(io::stdout().lock(), &outcome.records, format, params.header)?;
    for line in &outcome.failures {
        eprintln!("{line}");
    }
    if let Some(summary) = &outcome.summary {
        eprintln!("{summary}");
    }
    Ok(outcome.failures.is_empty())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

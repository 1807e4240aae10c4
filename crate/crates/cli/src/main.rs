mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};
use monoid_holes::Limits;

use crate::input::InputError;

/// Holes, fundamental holes and saturation points of affine semigroups.
///
/// Exit status: 0 success (normal semigroup), 10 holes exist, 2 bad input,
/// 3 cone not pointed, 4 resource limit reached, 1 other failure.
#[derive(Debug, Parser)]
#[command(name = "monoid-holes", version)]
struct Cli {
    #[command(flatten)]
    limits: LimitArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct LimitArgs {
    /// Largest Hilbert basis or minimal solution set to build.
    #[arg(long, global = true, value_name = "N")]
    max_basis: Option<usize>,
    /// Largest number of search nodes per search.
    #[arg(long, global = true, value_name = "N")]
    max_nodes: Option<u64>,
    /// Largest number of standard pairs per ideal.
    #[arg(long, global = true, value_name = "N")]
    max_pairs: Option<usize>,
    /// Worker threads for independent sub-computations.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hilbert basis, basis holes and fundamental holes.
    Fundamental { matrix: PathBuf },
    /// Cell representation of all holes.
    Holes { matrix: PathBuf },
    /// Q-minimal saturation points.
    Saturation { matrix: PathBuf },
    /// Norm bound for finite hole sets, with a certificate when the set is infinite.
    Bound { matrix: PathBuf },
    /// Membership of one vector in the semigroup and its saturation.
    Member {
        matrix: PathBuf,
        /// Entries separated by spaces or commas.
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        vector: Vec<String>,
    },
    /// Three-dimensional transportation problems.
    Transport(TransportArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).multiple(true).args(["dims", "vlach", "margins"])))]
pub struct TransportArgs {
    /// Table shape; alone, prints the constraint matrix.
    #[arg(long, num_args = 3, value_names = ["R", "S", "T"])]
    pub dims: Option<Vec<usize>>,
    /// Verify Vlach's 3x4x6 hole.
    #[arg(long, conflicts_with_all = ["dims", "margins"])]
    pub vlach: bool,
    /// Margin file with u, v, w blocks; searches for an integer table.
    #[arg(long, value_name = "FILE")]
    pub margins: Option<PathBuf>,
}

fn limits(args: &LimitArgs) -> Result<Limits> {
    let mut limits = match std::env::var("MONOID_HOLES_LIMITS") {
        Ok(spec) => spec.parse::<Limits>().context("in MONOID_HOLES_LIMITS")?,
        Err(_) => Limits::default(),
    };
    if let Some(v) = args.max_basis {
        limits.max_basis = v;
    }
    if let Some(v) = args.max_nodes {
        limits.max_nodes = v;
    }
    if let Some(v) = args.max_pairs {
        limits.max_pairs = v;
    }
    if let Some(v) = args.jobs {
        limits.jobs = v.max(1);
    }
    Ok(limits)
}

fn run(cli: Cli) -> Result<commands::Outcome> {
    let limits = limits(&cli.limits)?;
    log::debug!("limits: {limits:?}");
    match cli.command {
        Command::Fundamental { matrix } => commands::fundamental(&matrix, limits),
        Command::Holes { matrix } => commands::holes(&matrix, limits),
        Command::Saturation { matrix } => commands::saturation(&matrix, limits),
        Command::Bound { matrix } => commands::bound(&matrix, limits),
        Command::Member { matrix, vector } => commands::member(&matrix, &vector, limits),
        Command::Transport(args) => commands::transport(&args, limits),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use monoid_holes::Error as E;
    for cause in err.chain() {
        if cause.downcast_ref::<InputError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::NotPointed => 3,
                E::ResourceExhausted { .. } => 4,
                E::DimensionMismatch { .. } | E::EmptyMatrix { .. } | E::InvalidInput(_) => 2,
                E::RankDeficient { .. } | E::OutOfRange(_) => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli);
    log::info!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(outcome) => {
            print!("{}", outcome.report);
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Exit statuses beyond clap's own `2` for usage errors.
mod exit {
    pub const OTHER: u8 = 1;
    pub const PARSE: u8 = 3;
    pub const VALIDATION: u8 = 4;
    pub const CLASS_MISMATCH: u8 = 5;
}

#[derive(Parser)]
#[command(name = "geodiscord", version, about = "Geometric discord of two- and three-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a state file and report its X class.
    Validate {
        path: PathBuf,
        /// Also write the report as key=value lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometric discord with measurement on qubit 1.
    Discord {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        /// Oracle search grid as THETAxPHI.
        #[arg(long, default_value = "64x128", value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(long, default_value_t = 1e-10)]
        refine_tol: f64,
        #[arg(long, default_value_t = 200)]
        max_refine_iters: usize,
        /// Relabel qubits before splitting, e.g. `2,1,3` measures qubit 2.
        #[arg(long, value_delimiter = ',')]
        permute: Option<Vec<usize>>,
        /// How the three-qubit K matrix is built.
        #[arg(long, default_value = "auto")]
        route: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closest classical-quantum state.
    Closest {
        path: PathBuf,
        /// Where to write the classical state.
        #[arg(long)]
        out: PathBuf,
    },
    /// Pairwise discords and the monogamy residual.
    Monogamy {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A member of the GHZ, W or Bell-type family.
    Family {
        family: String,
        #[command(flatten)]
        params: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Emit::Discord)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a family over one parameter as CSV.
    Sweep {
        family: String,
        /// Swept parameter: `p`, or `c1`/`c2`/`c3` for the Bell family.
        #[arg(long, default_value = "p")]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        #[arg(long, value_delimiter = ',', default_value = "discord_1_23")]
        columns: Vec<String>,
        /// Values of the coefficients that are not swept.
        #[command(flatten)]
        params: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random state.
    Random {
        #[arg(long, value_enum, default_value_t = RandomKind::Class1)]
        kind: RandomKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct FamilyArgs {
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c3: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Analytic,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    State,
    Discord,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RandomKind {
    Class1,
    Class2,
    Twoqubit,
    Generic,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected THETAxPHI, got `{s}`"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((n(a)?, n(b)?))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use geodiscord::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. }) => exit::PARSE,
        Some(Error::ClassMismatch { .. }) => exit::CLASS_MISMATCH,
        Some(e) if e.is_validation() => exit::VALIDATION,
        Some(Error::DimensionMismatch { .. }) => exit::VALIDATION,
        Some(Error::Parameter(_)) | Some(Error::QubitIndex { .. }) => 2,
        _ => exit::OTHER,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use classdual::blocks::BlockError;
use classdual::chartab::TableError;
use classdual::duality::DualityError;
use classdual::group::{GroupError, DEFAULT_ELEMENT_CAP};
use classdual::suite::SubjectError;

/// Character tables of small permutation groups and the class-size / defect-zero
/// duality checks built on them.
#[derive(Debug, Parser)]
#[command(name = "classdual", version)]
pub struct Cli {
    #[command(flatten)]
    pub source: Source,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Group name from the catalog.
    #[arg(long, global = true, conflicts_with = "spec")]
    pub group: Option<String>,
    /// Group spec file (JSON with name, degree, generators).
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Catalog file to use instead of the bundled one.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Load the character table from this file instead of computing it.
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,
    /// Largest group order that will be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class sizes, centralizer orders, element orders and real classes.
    Classes,
    /// Print the character table, optionally saving it to a file.
    Table {
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// γ_n(φ) = [φ, πⁿ] (or δ_n(φ) = [φ, ψⁿ] with --real) for every irreducible φ.
    Gamma {
        #[arg(short, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        real: bool,
    },
    /// Recover the class sizes from γ_n(1_G) (or the real class sizes from δ_n(1_G)).
    Recover {
        #[arg(long)]
        real: bool,
        /// Extra sequence terms to check beyond the ones solved for.
        #[arg(long, default_value_t = 2)]
        extra: u32,
    },
    /// Compare γ_n / δ_n residues mod p with the existence of p-defect-zero classes.
    Defect {
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        real: bool,
    },
    /// p-elements by the congruence χ(g) ≡ χ(1) mod M, next to element orders.
    Pelements {
        #[arg(short)]
        p: u64,
    },
    /// Principal p-block membership through central characters.
    Blocks {
        #[arg(short)]
        p: u64,
    },
    /// γ(ψ) = [ψ, π³·Σ_{φ∈B} φ] for every ψ, with B the principal block by default.
    Counterexample {
        #[arg(short)]
        p: u64,
        /// Comma-separated character indices to use as B.
        #[arg(long, value_delimiter = ',')]
        block: Option<Vec<usize>>,
        /// Also test p·Σ_{B₀} φ(1)² and its p-part as divisors.
        #[arg(long)]
        alt_normalizer: bool,
    },
    /// Run every invariant check over the catalog.
    Verify,
}

/// Exit codes; clap itself uses 2 for usage errors.
pub mod exit {
    pub const CHECK_FAILED: u8 = 1;
    pub const UNKNOWN_GROUP: u8 = 3;
    pub const MALFORMED_SPEC: u8 = 4;
    pub const NOT_PRIME: u8 = 5;
    pub const CAP_EXCEEDED: u8 = 6;
    pub const OTHER: u8 = 7;
}

fn group_code(e: &GroupError) -> u8 {
    match e {
        GroupError::UnknownGroup(_) => exit::UNKNOWN_GROUP,
        GroupError::CapExceeded { .. } => exit::CAP_EXCEEDED,
        GroupError::RepeatedPoint(_)
        | GroupError::PointOutOfRange(_)
        | GroupError::Malformed(_)
        | GroupError::InvalidSpec(_) => exit::MALFORMED_SPEC,
        GroupError::InvalidClasses(_) => exit::OTHER,
    }
}

fn error_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<GroupError>() {
            return group_code(e);
        }
        if let Some(SubjectError::Group(e)) = cause.downcast_ref::<SubjectError>() {
            return group_code(e);
        }
        if let Some(TableError::Group(e)) = cause.downcast_ref::<TableError>() {
            return group_code(e);
        }
        if cause.downcast_ref::<commands::NotPrime>().is_some()
            || matches!(cause.downcast_ref::<DualityError>(), Some(DualityError::NotPrime(_)))
            || matches!(cause.downcast_ref::<BlockError>(), Some(BlockError::NotPrime(_)))
        {
            return exit::NOT_PRIME;
        }
    }
    exit::OTHER
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            let ok = report.ok();
            print!("{}", report.render(cli.format));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(exit::CHECK_FAILED)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_code(&err))
        }
    }
}

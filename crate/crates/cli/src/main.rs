use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gf2dav_cli::commands::{self, Target};
use gf2dav_cli::suites::Suite;
use gf2dav_cli::verify::{self, VerifyConfig, DEFAULT_MAX_DEGREE};
use gf2dav_cli::CliError;
use gf2dav_core::zerosum::DEFAULT_BUDGET;
use gf2dav_core::SearchOptions;

/// Davenport constants of the multiplicative semigroup of GF(2)[x]/(f).
///
/// Polynomials are written like `x^4+x+1` or as hex masks like `0x13`.
#[derive(Parser)]
#[command(name = "gf2dav", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a polynomial over GF(2).
    Factor { f: String },
    /// Describe the ring GF(2)[x]/(f).
    Info { f: String },
    /// Compute D(S_R) and/or D(U(S_R)) by exhaustive search.
    Davenport {
        f: String,
        #[arg(long, value_enum, default_value_t = TargetArg::Both)]
        target: TargetArg,
        /// Maximum DFS nodes per search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Use D(C_m) = m for a cyclic unit group once the budget runs out.
        #[arg(long)]
        cyclic_fast_path: bool,
    },
    /// Reduce a sequence to a proper subsequence with the same product.
    Reduce {
        f: String,
        /// Terms of the sequence.
        terms: Vec<String>,
    },
    /// Check the bounds for every nonconstant f up to a degree.
    Verify {
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        /// Worker threads (default: one per core).
        #[arg(long)]
        jobs: Option<usize>,
        /// Record cache directory; falls back to $DAVENPORT_CACHE.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        cyclic_fast_path: bool,
        /// Property suite to run as well; repeatable.
        #[arg(long = "suite", value_enum)]
        suites: Vec<SuiteArg>,
        /// Print per-modulus wall time to stderr.
        #[arg(long)]
        wall_clock: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Semigroup,
    Units,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Quotient,
    UnitsBound,
    GreenOrder,
    SmallDavenport,
    Reduce,
    All,
}

fn suites(args: &[SuiteArg]) -> Vec<Suite> {
    if args.contains(&SuiteArg::All) {
        return Suite::ALL.to_vec();
    }
    args.iter()
        .map(|a| match a {
            SuiteArg::Quotient => Suite::Quotient,
            SuiteArg::UnitsBound => Suite::UnitsBound,
            SuiteArg::GreenOrder => Suite::GreenOrder,
            SuiteArg::SmallDavenport => Suite::SmallDavenport,
            SuiteArg::Reduce | SuiteArg::All => Suite::Reduce,
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Factor { f } => commands::factor(&mut out, &f),
        Command::Info { f } => commands::info(&mut out, &f),
        Command::Davenport {
            f,
            target,
            budget,
            cyclic_fast_path,
        } => {
            let target = match target {
                TargetArg::Semigroup => Target::Semigroup,
                TargetArg::Units => Target::Units,
                TargetArg::Both => Target::Both,
            };
            commands::davenport(&mut out, &f, target, SearchOptions { budget, cyclic_fast_path })
        }
        Command::Reduce { f, terms } => commands::reduce(&mut out, &f, &terms),
        Command::Verify {
            max_degree,
            jobs,
            cache_dir,
            budget,
            cyclic_fast_path,
            suites: s,
            wall_clock,
        } => {
            let cfg = VerifyConfig {
                max_degree,
                jobs,
                cache_dir,
                budget,
                cyclic_fast_path,
                suites: suites(&s),
                wall_clock,
            };
            verify::run(&cfg, &mut out, &mut io::stderr())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = io::stdout().flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

mod cache;
mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sylow_branching::oracle::{Method, DEFAULT_SEED};
use sylow_branching::Error;

#[derive(Parser, Debug)]
#[command(
    name = "sylow",
    version,
    about = "Degrees of Sylow constituents of symmetric group characters"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// The prime
    #[arg(short = 'p', long = "prime", global = true, default_value_t = 3)]
    pub p: u64,
    /// Restriction oracle used for brute-force sets
    #[arg(long, global = true, default_value = "auto", value_parser = parse_method)]
    pub method: Method,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory of the degree-set cache
    #[arg(long, global = true, env = "SYLOW_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads (default: all cores)
    #[arg(short = 'j', long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for sampled cross-checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest wreath level whose full table may be built for this prime
    #[arg(long, global = true)]
    pub max_level: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Markdown,
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Smoke,
    Standard,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Predicted Ω_n^k as a box set
    Predict {
        n: u64,
        k: u64,
        /// Use the recursion instead of the closed form
        #[arg(long)]
        recursive: bool,
    },
    /// Reproduce the tables of Ω^k for p = 3
    Table {
        /// Which published table (1: prime powers, 2: composite n)
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        /// Custom columns instead of a published table
        #[arg(long, value_delimiter = ',')]
        columns: Vec<u64>,
        #[arg(long)]
        k_max: Option<u64>,
    },
    /// Restrict χ^λ to a Sylow p-subgroup
    Restrict {
        /// Partition literal, e.g. 8,1 or 2^3,1
        partition: String,
        /// Print only the degree set
        #[arg(long)]
        degrees: bool,
        /// Print only the largest degree exponent, computed without tables
        #[arg(long, conflicts_with = "degrees")]
        max: bool,
    },
    /// The set Ω_n^k, predicted or computed by an oracle
    Omega {
        n: usize,
        k: u64,
        /// Compute by brute force with the given method
        #[arg(long, num_args = 0..=1, default_missing_value = "auto", value_parser = parse_method)]
        oracle: Option<Method>,
    },
    /// Run the verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = Tier::Smoke)]
        level: Tier,
    },
    /// |Ω_n^{α_n}| / |P(n)| as an exact fraction
    Ratio {
        n: u64,
        #[arg(long, default_value_t = 6)]
        digits: usize,
    },
    /// Irreducible characters of the iterated wreath product C_p ≀ ⋯ ≀ C_p
    Irr {
        #[arg(value_name = "P")]
        prime: u64,
        #[arg(value_name = "M")]
        level: u32,
        /// Also list conjugacy classes
        #[arg(long)]
        classes: bool,
    },
    /// ⋆ product of two box sets, written B_n(t) or n:t
    Star { left: String, right: String },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Everything that ends a run early, with its exit status.
#[derive(Debug)]
pub enum Failure {
    Verification(String),
    Usage(String),
    Scope(String),
    Partition(String),
    PrimeTwo(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Scope(_) => 3,
            Failure::Partition(_) => 4,
            Failure::PrimeTwo(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m)
            | Failure::Usage(m)
            | Failure::Scope(m)
            | Failure::Partition(m)
            | Failure::PrimeTwo(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidPartition(_) => Failure::Partition(msg),
            Error::PrimeTwo => Failure::PrimeTwo(msg),
            Error::ScopeExceeded(_) => Failure::Scope(msg),
            Error::Inconsistency(_) => Failure::Verification(msg),
            _ => Failure::Usage(msg),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sylow: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = cli.config;
    if let Some(m) = cfg.max_level {
        let scope = sylow_branching::wreath::current_scope().with_max_level(cfg.p, m);
        sylow_branching::wreath::set_scope(scope);
    }
    let mut ctx = commands::Context::new(&cfg)?;
    let out = match cli.command {
        Command::Predict { n, k, recursive } => commands::predict(&cfg, n, k, recursive),
        Command::Table {
            which,
            columns,
            k_max,
        } => commands::table(&cfg, which, &columns, k_max),
        Command::Restrict {
            partition,
            degrees,
            max,
        } => {
            if max {
                commands::partial(&cfg, &partition)
            } else {
                commands::restrict(&cfg, &mut ctx, &partition, degrees)
            }
        }
        Command::Omega { n, k, oracle } => commands::omega(&cfg, &mut ctx, n, k, oracle),
        Command::Verify { level } => verify::run(&cfg, &mut ctx, level),
        Command::Ratio { n, digits } => commands::ratio(&cfg, n, digits),
        Command::Irr {
            prime,
            level,
            classes,
        } => commands::irr(&cfg, prime, level, classes),
        Command::Star { left, right } => commands::star(&cfg, &left, &right),
    };
    if let Err(e) = ctx.cache.flush() {
        eprintln!("sylow: warning: could not write cache: {e}");
    }
    out
}

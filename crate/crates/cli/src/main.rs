mod commands;
mod output;
mod stability;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::{Output, Status};

#[derive(Parser)]
#[command(name = "ncstab", version, about = "Exact stability checks for quadratic algebras on three generators")]
struct Cli {
    /// Print the JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Do not read or write the graded-piece cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory for graded pieces.
    #[arg(long, global = true, default_value = ".ncstab-cache")]
    cache_dir: PathBuf,
    /// Largest tensor dimension 3^n that may be materialized.
    #[arg(long, global = true)]
    limit_dim: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArg {
    /// Algebra file.
    #[arg(long)]
    algebra: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of the graded pieces.
    Hilbert {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Weights and Futaki values of a filtration.
    Futaki {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Flag or filtration file.
        #[arg(long)]
        flag: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Measure in the twisted ring A / c3 A instead of A.
        #[arg(long)]
        twisted: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Point scheme, singular locus, linear components and verdict.
    Geometry {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Number of sample points reported with their images under sigma.
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The normal element c3 and its certificates.
    C3 {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Flag supplying W and U for --pattern.
        #[arg(long, requires = "pattern")]
        flag: Option<PathBuf>,
        /// Word pattern such as WWV+WVW+VWW.
        #[arg(long, requires = "flag")]
        pattern: Option<String>,
    },
    /// Geometric verdict combined with seeded Futaki sampling.
    Stability {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact checks of the closed-form estimates.
    VerifyEstimates {
        /// Case name, or "all".
        #[arg(long, default_value = "all")]
        case: String,
        #[arg(long, default_value_t = 2)]
        n_min: i128,
        #[arg(long, default_value_t = 300)]
        n_max: i128,
        /// Largest multiplicities scanned.
        #[arg(long, default_value_t = 4)]
        l_max: u32,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
    },
    /// Built-in families and committed fixtures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List families, fixtures and search predicates.
    List,
    /// Write an algebra file for a family member.
    Emit {
        name: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
        /// Prime for the base field.
        #[arg(long, default_value_t = 10007, conflicts_with = "rationals")]
        p: u64,
        /// Work over the rationals.
        #[arg(long)]
        rationals: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a committed fixture with its certificate.
    Fixture {
        name: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Seeded search for an algebra satisfying a predicate.
    Search {
        #[arg(long)]
        predicate: String,
        /// Search space as JSON, e.g. {"kind":"sklyanin-grid","p":10007,"range":50,"budget":20}.
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    let env = commands::Env {
        no_cache: cli.no_cache,
        cache_dir: cli.cache_dir,
        limit_dim: cli.limit_dim,
    };
    match cli.command {
        Command::Hilbert { algebra, max_degree } => commands::hilbert(&env, &algebra.algebra, max_degree),
        Command::Futaki {
            algebra,
            flag,
            max_degree,
            twisted,
            seed,
        } => commands::futaki(&env, &algebra.algebra, &flag, max_degree, twisted, seed),
        Command::Geometry { algebra, samples, seed } => commands::geometry(&env, &algebra.algebra, samples, seed),
        Command::C3 {
            algebra,
            max_degree,
            seed,
            flag,
            pattern,
        } => commands::c3(&env, &algebra.algebra, max_degree, seed, flag.as_deref(), pattern.as_deref()),
        Command::Stability {
            algebra,
            q,
            samples,
            seed,
        } => stability::command(&env, &algebra.algebra, q, samples, seed),
        Command::VerifyEstimates {
            case,
            n_min,
            n_max,
            l_max,
            m_max,
        } => commands::verify_estimates(&case, n_min, n_max, l_max, m_max),
        Command::Catalog { action } => match action {
            CatalogAction::List => Ok(commands::catalog_list()),
            CatalogAction::Emit {
                name,
                params,
                p,
                rationals,
                output,
            } => commands::catalog_emit(&name, &params, (!rationals).then_some(p), output.as_deref()),
            CatalogAction::Fixture { name, output } => commands::catalog_fixture(&name, output.as_deref()),
            CatalogAction::Search {
                predicate,
                space,
                seed,
                output,
            } => commands::catalog_search(&predicate, &space, seed, output.as_deref()),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("report serializes"));
            } else {
                print!("{}", out.text);
            }
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Failed => ExitCode::from(1),
                Status::Unresolved => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

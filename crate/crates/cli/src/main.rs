//! `orthogoval`: build, verify and search for mutually orthogoval planes, and
//! compile them into covering perfect hash families and covering arrays.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

const LONG_VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    "\nplanes format: orthogoval-planes v1",
    "\ncphf format: CPHF text v1",
    "\nca format: CA text v1",
    "\nmatrix format: bit blocks v1"
);

#[derive(Debug, Parser)]
#[command(name = "orthogoval", version, long_version = LONG_VERSION, about)]
pub struct Cli {
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a set of mutually orthogoval planes and write it as JSON.
    Construct(ConstructArgs),
    /// Check a JSON plane file for orthogovality.
    Verify(VerifyArgs),
    #[command(subcommand)]
    Search(SearchCommand),
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Upper bound on the size of a mutually orthogoval set.
    Bounds(BoundsArgs),
    #[command(subcommand)]
    Cphf(CphfCommand),
    #[command(subcommand)]
    Ca(CaCommand),
    /// Run a catalog entry end to end and compare its parameters.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    CremonaPg,
    PencilAg,
    PhiK,
    Ds13,
    Sts9Large,
    MatrixPower,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Plane order; fixed for ds13 and sts9-large.
    #[arg(long)]
    pub q: Option<u32>,
    /// Exponent of the φ_k map.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Number of planes in a matrix-power family.
    #[arg(long, default_value_t = 7)]
    pub s: usize,
    /// Matrix file for matrix-power; the built-in matrices serve q = 4 and q = 8.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Check every pair instead of only the first two planes.
    #[arg(long)]
    pub mutual: bool,
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Random matrices whose spread image gives a plane orthogoval to the standard one.
    Matrices {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
        /// Cap on partial matrices drawn.
        #[arg(long, default_value_t = 1 << 24)]
        max_partials: u64,
    },
    /// Maximum (or first target-sized) clique of mutually orthogoval planes.
    Clique {
        /// JSON plane file.
        #[arg(long, conflicts_with = "matrices")]
        planes: Option<PathBuf>,
        /// Matrix file; the identity is added as vertex 0.
        #[arg(long, requires = "n")]
        matrices: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        target: Option<usize>,
    },
    /// Planes whose lines are ovals of the standard projective plane.
    Ovals {
        #[arg(long)]
        q: u32,
        /// Stop after this many oval-planes.
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScanCommand {
    /// Prime powers q with −4 a power of p and 2 not, modulo q² + q + 1.
    Multipliers {
        #[arg(long)]
        limit: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Projective,
    Affine,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Also check the packing inequality for a set of this size.
    #[arg(long)]
    pub s: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CphfCommand {
    /// Compile a JSON plane family into a CPHF.
    Build {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Keep only the first r planes.
        #[arg(long)]
        rows: Option<usize>,
        /// Append the two line-z columns.
        #[arg(long)]
        extend: bool,
    },
    /// Recompute the index of a CPHF file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Required index; defaults to the one in the header.
        #[arg(long)]
        lambda: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CaCommand {
    /// Expand a CPHF file into a covering array.
    Build {
        #[arg(long)]
        cphf: PathBuf,
        #[arg(long)]
        lambda: usize,
        /// Use the extended expansion; the CPHF must carry the two extra columns.
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive coverage check.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        lambda: u32,
    },
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Catalog entry, for example q8-extended-λ1.
    #[arg(required_unless_present_any = ["list", "all"])]
    pub name: Option<String>,
    /// Print the catalog.
    #[arg(long)]
    pub list: bool,
    /// Run every entry.
    #[arg(long, conflicts_with = "name")]
    pub all: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "chipfire",
    version,
    about = "Divisors, ranks and refinement searches on multigraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph file, or a built-in family such as `theta(2,2,2)`.
    #[arg(long)]
    pub graph: String,
    /// Seed for `random(n,m)` specs given without one.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct DivisorArg {
    /// Divisor as inline JSON (`{"a":1}`), a JSON file, or comma-separated
    /// coefficients in vertex order.
    #[arg(long, allow_hyphen_values = true)]
    pub divisor: String,
}

#[derive(Debug, Args)]
pub struct Params {
    #[arg(long)]
    pub g: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub r: u64,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Largest refinement index to search (default: bound - 1).
    #[arg(long)]
    pub k_max: Option<u64>,
    /// Stop after this many classes (0 = unlimited).
    #[arg(long, default_value_t = 1_000_000)]
    pub max_classes: u64,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub time_budget: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First Betti number.
    Genus(GraphArg),
    /// Laplacian matrix in vertex order.
    Laplacian(GraphArg),
    /// Spanning-tree count.
    Trees(GraphArg),
    /// Homothetic refinement G^(k), optionally transporting a divisor.
    Refine {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        /// Also write the refined graph file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// q-reduced representative.
    Reduce {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        divisor: DivisorArg,
        /// Base vertex name (default: first vertex).
        #[arg(long)]
        q: Option<String>,
    },
    /// Baker-Norine rank.
    Rank {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Checks r(D) - r(K - D) = deg(D) + 1 - g.
    RrVerify {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Brill-Noether number.
    Rho(Params),
    /// Refinement bound, with the legacy bound for comparison.
    Bound {
        #[command(flatten)]
        params: Params,
        /// Vertex count for the legacy bound (default 2).
        #[arg(long)]
        n: Option<u64>,
        /// Edge count for the legacy bound (default g + 1).
        #[arg(long)]
        m: Option<u64>,
    },
    /// Legacy bound (m + n^r d)! d^(m + n^r d).
    BoundLegacy {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
    },
    /// Evaluates the bound comparison chain.
    BoundCompare(Params),
    /// Searches G^(k) for a divisor of degree d and rank at least r.
    Search {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Smallest degree of a rank-r divisor on the graph itself.
    Gonality {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 1)]
        r: u64,
        #[arg(long)]
        d_max: u64,
    },
    /// Harmonicity of a morphism file.
    HarmonicCheck {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Riemann-Hurwitz identity for a harmonic morphism.
    RhCheck {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Pulls a target divisor back along a morphism.
    Pullback {
        #[arg(long)]
        morphism: PathBuf,
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Pushes a source divisor forward along an edge contraction.
    Pushforward {
        #[arg(long)]
        contraction: PathBuf,
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Runs a parameter grid and appends one record per unit to a JSONL file.
    Batch {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Seed for `random(n,m)` specs given without one.
        #[arg(long)]
        seed: Option<u64>,
        /// Record elapsed time per unit (records are then not byte-stable).
        #[arg(long)]
        timing: bool,
    },
}

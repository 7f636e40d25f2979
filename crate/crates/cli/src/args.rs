use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sparse-halves", version, about = "Find low-density vertex halves of K4-free graphs and certify the supporting inequalities")]
pub struct Cli {
    /// Print the exact density thresholds used for route dispatch.
    #[arg(long, global = true)]
    pub explain: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated graph as one graph6 line.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Find a sparse half of every graph in a graph6 file.
    SparseHalf(SparseHalfArgs),
    /// Certify the sign of a closed-form function, or replay a certificate.
    Certify(CertifyArgs),
    /// Exact minimum edge count over k-subsets.
    Oracle(OracleArgs),
    /// Check each graph against an extremal characterization.
    VerifyExtremal(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Balanced complete multipartite graph.
    Turan {
        parts: usize,
        n: usize,
    },
    /// Blow-up of a base graph (petersen, c<N>, k<N> or a graph6 string);
    /// one size applies to every block.
    Blowup {
        base: String,
        #[arg(required = true)]
        sizes: Vec<usize>,
    },
    Petersen,
    C5,
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Circulant {
        n: usize,
        #[arg(required = true)]
        jumps: Vec<usize>,
    },
}

#[derive(Args, Debug)]
pub struct GraphInput {
    /// graph6 file, one graph per line; `-` reads standard input.
    pub file: PathBuf,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OracleCap {
    /// Largest n the oracle accepts.
    #[arg(long, env = "SPARSE_HALVES_ORACLE_CAP", default_value_t = sparse_halves::oracle::DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteChoice {
    Auto,
    Sparse,
    Medium,
    Dense,
    Oracle,
}

#[derive(Args, Debug)]
pub struct SparseHalfArgs {
    #[arg(long, value_enum, default_value_t = RouteChoice::Auto)]
    pub route: RouteChoice,
    /// Subset size other than ⌊n/2⌋ (uniform selection and oracle only).
    #[arg(long)]
    pub half_size: Option<usize>,
    /// Run on graphs containing a K4 without guarantees.
    #[arg(long)]
    pub allow_k4: bool,
    /// Largest n for which the exact oracle joins the candidates.
    #[arg(long, default_value_t = sparse_halves::selectors::DEFAULT_ORACLE_THRESHOLD)]
    pub oracle_threshold: usize,
    #[command(flatten)]
    pub cap: OracleCap,
    #[command(flatten)]
    pub input: GraphInput,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertTarget {
    H,
    K,
    Ell,
    M,
    ClosedForms,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndpointChoice {
    F64,
    F32,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["target", "replay"]))]
pub struct CertifyArgs {
    #[arg(value_enum)]
    pub target: Option<CertTarget>,
    /// Required clearance, as a decimal or a fraction.
    #[arg(long)]
    pub margin: Option<String>,
    #[arg(long, default_value_t = sparse_halves::certifier::DEFAULT_BUDGET)]
    pub budget: usize,
    /// Certificate file; a directory when certifying all functions.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = EndpointChoice::F64)]
    pub endpoint: EndpointChoice,
    /// Re-check an existing certificate.
    #[arg(long, conflicts_with_all = ["target", "margin", "out"])]
    pub replay: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Subset size; defaults to ⌊n/2⌋.
    #[arg(long)]
    pub size: Option<usize>,
    /// Accept graphs above the cap, up to 64 vertices.
    #[arg(long)]
    pub override_cap: bool,
    #[command(flatten)]
    pub cap: OracleCap,
    #[command(flatten)]
    pub input: GraphInput,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeChoice {
    SparseHalf,
    TriangleFree,
    Bipartite,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = ModeChoice::SparseHalf)]
    pub mode: ModeChoice,
    /// Subset fraction for the triangle-free and bipartite modes.
    #[arg(long)]
    pub alpha: Option<String>,
    #[command(flatten)]
    pub input: GraphInput,
}

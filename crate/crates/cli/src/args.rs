use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "spine-census", version, about = "Census of oriented special spines over 4-regular graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Output file; without it output goes to the default directory or stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Directory for output files when `--output` is not given.
    #[arg(long, env = "SPINE_CENSUS_OUT_DIR", global = true)]
    pub out_dir: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    /// Seed for random sampling.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphClass {
    /// Simple connected graphs.
    #[value(name = "A", alias = "a")]
    A,
    /// Connected multigraphs with loops.
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the graphs of A_n or C_n.
    Graphs {
        #[arg(long, value_enum)]
        class: GraphClass,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        limits: EnumerationLimits,
    },
    /// Decorations of one graph with their cell counts.
    Spines {
        #[command(flatten)]
        graph: GraphChoice,
        /// Sample this many random decorations instead of listing all.
        #[arg(long)]
        sample: Option<usize>,
        /// Largest number of decorations listed.
        #[arg(long, default_value_t = 1_000_000)]
        max_decorations: u64,
    },
    /// Reduce the cell count of one graph's seed spine.
    Minimize {
        #[command(flatten)]
        graph: GraphChoice,
        #[command(flatten)]
        reduction: ReductionLimits,
    },
    /// One-cell spines with n vertices built from A_(n-1).
    Census {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        reduction: ReductionLimits,
    },
    /// Lower and upper bounds for ln |M_n|.
    Bounds {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Largest n for which A_n is enumerated.
        #[arg(long, default_value_t = 8)]
        a_limit: usize,
        /// Largest n for which C_n is enumerated.
        #[arg(long, default_value_t = 6)]
        c_limit: usize,
        /// Largest n for which the census runs.
        #[arg(long, default_value_t = 9)]
        census_limit: usize,
        #[command(flatten)]
        reduction: ReductionLimits,
    },
    /// Check the edge and vertex cell predicates on every minimal spine.
    VerifyLemmas {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Decorations swept per graph.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Write the dual gluing table of a spine.
    ExportTri {
        /// Spine JSON file.
        #[arg(long, conflicts_with_all = ["class", "graph_file"])]
        spine_file: Option<PathBuf>,
        #[command(flatten)]
        graph: GraphChoice,
        /// Decoration index of the chosen graph.
        #[arg(long, default_value_t = 0, conflicts_with = "minimize")]
        decoration: u64,
        /// Use the reduced spine of the chosen graph.
        #[arg(long)]
        minimize: bool,
    },
    /// Read a gluing table and report its spine and edge classes.
    ImportTri {
        /// Gluing table JSON file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Values of the regular-graph counting estimate.
    Bollobas {
        #[arg(long, default_value_t = 4)]
        r: u64,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct EnumerationLimits {
    /// Largest n accepted for enumeration.
    #[arg(long)]
    pub limit: Option<usize>,
}

/// A graph given by file, or by class, size and position in the enumeration.
#[derive(Debug, Args)]
pub struct GraphChoice {
    /// Graph JSON file (`{"n": .., "pairs": [[d, d'], ..]}`).
    #[arg(long, conflicts_with = "class")]
    pub graph_file: Option<PathBuf>,
    #[arg(long, value_enum, requires = "n")]
    pub class: Option<GraphClass>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Position in the sorted enumeration.
    #[arg(long, default_value_t = 0)]
    pub index: usize,
}

#[derive(Debug, Args)]
pub struct ReductionLimits {
    #[arg(long, default_value_t = 6)]
    pub bfs_depth: usize,
    #[arg(long, default_value_t = 200_000)]
    pub bfs_budget: usize,
    #[arg(long, default_value_t = 1_889_568)]
    pub exhaustive_budget: u64,
    #[arg(long, default_value_t = 64)]
    pub propagation_moves: usize,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Strong structural properties of pattern matrices, structured systems and
/// networks.
#[derive(Debug, Parser)]
#[command(name = "ssprop", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Write a JSON report to PATH (`-` for standard output).
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Seed for all random choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of sampled trials for oracles and diagnostics.
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,

    /// Relative tolerance for floating-point rank tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Comma-separated grid of rationals for the refuter, e.g. `0,1,-1,1/2`.
    #[arg(long, global = true, value_name = "LIST")]
    pub budget_grid: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entrywise sum of two patterns.
    Add { a: PathBuf, b: PathBuf },
    /// Product of two patterns.
    Mul { a: PathBuf, b: PathBuf },
    /// Decide strong full row (or column) rank.
    Rank {
        pattern: PathBuf,
        /// Test full column rank instead of row rank.
        #[arg(long)]
        column: bool,
    },
    /// Strong structural controllability of (A, B).
    Ssc { a: PathBuf, b: PathBuf },
    /// Regular strong structural controllability of a descriptor system (E, A, B).
    Descriptor { e: PathBuf, a: PathBuf, b: PathBuf },
    /// Strong structural input-state observability of (A, B, C, D).
    Iso { a: PathBuf, b: PathBuf, c: PathBuf, d: PathBuf },
    /// Strong structural output controllability of (A, B, C, D).
    #[command(name = "output-ctrl")]
    OutputCtrl { a: PathBuf, b: PathBuf, c: PathBuf, d: PathBuf },
    /// Strong structural target controllability of a network.
    Target {
        graph: PathBuf,
        /// Leader vertices, e.g. `1,2` or `1-3`.
        #[arg(long, value_name = "LIST")]
        leaders: String,
        /// Target vertices, e.g. `1-7`.
        #[arg(long, value_name = "LIST")]
        targets: String,
    },
    /// Sampling cross-checks of the structural decisions.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Decompose sampled members of P(A + B).
    Minkowski { a: PathBuf, b: PathBuf },
    /// Compare the pencil decision with sampled members and lambdas.
    Pencil { a: PathBuf, b: PathBuf },
    /// Compare the rank decision with sampled members.
    Rank { pattern: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Add { .. } => "add",
            Command::Mul { .. } => "mul",
            Command::Rank { .. } => "rank",
            Command::Ssc { .. } => "ssc",
            Command::Descriptor { .. } => "descriptor",
            Command::Iso { .. } => "iso",
            Command::OutputCtrl { .. } => "output-ctrl",
            Command::Target { .. } => "target",
            Command::Oracle(OracleCommand::Minkowski { .. }) => "oracle minkowski",
            Command::Oracle(OracleCommand::Pencil { .. }) => "oracle pencil",
            Command::Oracle(OracleCommand::Rank { .. }) => "oracle rank",
        }
    }

    /// Input paths in command-line order.
    pub fn inputs(&self) -> Vec<&PathBuf> {
        match self {
            Command::Add { a, b } | Command::Mul { a, b } | Command::Ssc { a, b } => vec![a, b],
            Command::Rank { pattern, .. } => vec![pattern],
            Command::Descriptor { e, a, b } => vec![e, a, b],
            Command::Iso { a, b, c, d } | Command::OutputCtrl { a, b, c, d } => vec![a, b, c, d],
            Command::Target { graph, .. } => vec![graph],
            Command::Oracle(OracleCommand::Minkowski { a, b } | OracleCommand::Pencil { a, b }) => vec![a, b],
            Command::Oracle(OracleCommand::Rank { pattern }) => vec![pattern],
        }
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qonsager::coeffs::Pipeline;
use qonsager::repcheck::Branch;

#[derive(Debug, Parser)]
#[command(name = "qonsager", version, about = "Coefficient tables and relation checks for generalized q-Onsager algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Record wall-clock times in certificates (off by default so output is
    /// byte-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,

    /// Abort with exit code 3 after this many seconds.
    #[arg(long, global = true, value_name = "SECS")]
    pub timeout: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PipelineArg {
    Recursive,
    Closed,
    Polynomial,
    Solve,
}

impl From<PipelineArg> for Pipeline {
    fn from(p: PipelineArg) -> Self {
        match p {
            PipelineArg::Recursive => Pipeline::Recursive,
            PipelineArg::Closed => Pipeline::Closed,
            PipelineArg::Polynomial => Pipeline::Polynomial,
            PipelineArg::Solve => Pipeline::Solve,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Zero,
    Nonzero,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Zero => Branch::Zero,
            BranchArg::Nonzero => Branch::Nonzero,
        }
    }
}

/// Either one rank or all ranks `1..=max_r`.
#[derive(Debug, Clone, Args)]
pub struct Ranks {
    #[arg(long, conflicts_with = "max_r")]
    pub r: Option<usize>,
    #[arg(long)]
    pub max_r: Option<usize>,
}

impl Ranks {
    pub fn resolve(&self) -> Option<Vec<usize>> {
        match (self.r, self.max_r) {
            (Some(r), _) => Some(vec![r]),
            (None, Some(m)) => Some((1..=m).collect()),
            (None, None) => None,
        }
    }
}

/// Coefficient source: a pipeline or a table document on disk.
#[derive(Debug, Clone, Args)]
pub struct Source {
    #[arg(long, value_enum, default_value_t = PipelineArg::Closed)]
    pub pipeline: PipelineArg,
    /// JSON table document (as written by `coeffs --format json`).
    #[arg(long, conflicts_with = "pipeline")]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficient table of one rank.
    Coeffs {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = PipelineArg::Closed)]
        pipeline: PipelineArg,
    },
    /// Reduce the rank-r relation to normal form.
    Verify {
        #[command(flatten)]
        ranks: Ranks,
        #[command(flatten)]
        source: Source,
        /// Use only the rho = 0 part of the relation and rewriting rule.
        #[arg(long)]
        rho_zero: bool,
    },
    /// Compare all pipelines rank by rank.
    CrossCheck {
        #[arg(long, default_value_t = 12)]
        max_r: usize,
        /// Highest rank that includes the linear-system pipeline.
        #[arg(long, default_value_t = 6)]
        solve_max_r: usize,
    },
    /// Evaluate the relation on the 3-dimensional evaluation representation.
    Repcheck {
        #[command(flatten)]
        ranks: Ranks,
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BranchArg::Zero)]
        branch: BranchArg,
    },
    /// Vanishing pattern of the generating polynomial on the eigenvalue ladder.
    Spectral {
        #[command(flatten)]
        ranks: Ranks,
        /// Scale C of the eigenvalues, as a scalar in q.
        #[arg(long, default_value = "1")]
        c: String,
    },
}

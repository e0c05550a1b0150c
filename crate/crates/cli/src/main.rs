//! `mdtw`: generate 3DM instances, build both reductions, certify them and
//! check the pathwidth bound.
//!
//! Exit codes: 0 when every check passes, 1 on a property violation (witness
//! on stderr), 2 on usage or input errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Failure;

/// Environment variable read for the rayon worker count.
pub const WORKERS_ENV: &str = "MDTW_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "mdtw", version, about = "3DM -> MRS -> Metric Dimension reduction toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub guards: Guards,
}

/// Limits checked before any expensive build.
#[derive(Debug, Clone, Copy, Args)]
pub struct Guards {
    #[arg(long, global = true, default_value_t = 6)]
    pub max_n: usize,
    #[arg(long, global = true, default_value_t = 12)]
    pub max_m: usize,
    #[arg(long, global = true, default_value_t = mdtw_core::graph::TINY_VERTEX_CAP)]
    pub max_tiny_vertices: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a 3DM instance.
    Gen3dm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Hide a perfect matching among the tuples.
        #[arg(long)]
        planted: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a 3DM instance exactly.
    Solve3dm {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build a reduction and write graph, labels and sidecar files.
    Reduce {
        target: Target,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    Solve {
        #[command(subcommand)]
        what: SolveCommand,
    },
    /// Verify lemmas or certify an instance.
    Certify {
        what: CertifyWhat,
        #[arg(long = "in")]
        input: PathBuf,
        /// Write `fact <name> <status> [witness]` lines here.
        #[arg(long)]
        facts: Option<PathBuf>,
    },
    Width {
        #[command(subcommand)]
        what: WidthCommand,
    },
    /// Write every artifact for one instance into a directory.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Mrs,
    Md,
}

#[derive(Debug, Subcommand)]
pub enum SolveCommand {
    /// Exhaustive multicolored resolving set search.
    Mrs {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exact metric dimension of a small graph.
    Tiny {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        max_k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertifyWhat {
    Lemma1,
    Forcedset,
    Forcedvertex,
    Yes,
    No,
    All,
}

#[derive(Debug, Subcommand)]
pub enum WidthCommand {
    /// Synthesize the search strategy for the metric dimension graph of an instance.
    Synth {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Play a strategy file on a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long, default_value_t = mdtw_core::width::SEARCHER_BUDGET)]
        budget: usize,
    },
}

fn configure_workers() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let workers: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| Failure::input(format!("{WORKERS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Failure::input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_workers().and_then(|()| commands::run(&cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("mdtw: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

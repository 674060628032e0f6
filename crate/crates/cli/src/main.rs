//! `ultraforest` command-line front end.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a false verdict (the
//! certificate goes to standard output), 2 for unreadable or invalid input.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "ultraforest",
    version,
    about = "Finite ultrametric spaces and their representing trees"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "ULTRAFOREST_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    /// Graphviz; accepted by `tree` and `convert`.
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Matrix,
    Tree,
    Unrooted,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Distance matrix as JSON.
    Matrix,
    /// Distance matrix as CSV.
    Csv,
    Tree,
    Unrooted,
    /// Graphviz drawing of the representing tree, or of the unrooted tree
    /// when the input is one.
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a distance matrix is an ultrametric.
    Validate { file: PathBuf },
    /// Print the representing tree of a space.
    Tree { file: PathBuf },
    /// Run every class predicate, or a single one with `--class`.
    Classify {
        file: PathBuf,
        #[arg(long)]
        class: Option<String>,
    },
    /// Cross-check structural characterizations against independent oracles.
    Audit {
        file: Option<PathBuf>,
        /// Audit every enumerated space with 2..=max-n points.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Decide whether two spaces are isometric.
    Isometric { first: PathBuf, second: PathBuf },
    /// Decide weak similarity and print the distance scaling.
    Weaksim { first: PathBuf, second: PathBuf },
    /// Convert between matrices, representing trees and unrooted trees.
    Convert {
        /// Input kind; detected from the content when omitted.
        #[arg(long, value_enum)]
        from: Option<Kind>,
        #[arg(long, value_enum)]
        to: Target,
        file: PathBuf,
    },
    /// Closure of classes under subspaces.
    Hereditary {
        #[command(subcommand)]
        action: HereditaryCommand,
    },
    /// Emit spaces as JSON lines.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random spaces; seeds are consecutive from `--seed`.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Every space on `n` points up to weak similarity instead of random ones.
        #[arg(long)]
        exhaustive: bool,
    },
    /// One canonical code per input, equal exactly for isometric spaces.
    Fingerprint {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Code up to weak similarity instead of isometry.
        #[arg(long)]
        weak: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum HereditaryCommand {
    /// Check deletion closure over all spaces with at most `max-n` points.
    Verify {
        class: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Search for a member with a subspace outside the class.
    Counterexample {
        class: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Maximum number of spaces to examine.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Check every subspace of one member.
    Instance { class: String, file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

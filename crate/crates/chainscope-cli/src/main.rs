//! `chainscope`: command-line front end for the chain-geometry library.
//!
//! Exit codes: 0 success, 1 domain verdict failure (an invalid space or
//! model under `validate`, suite failures under `propcheck`), 2 input
//! error (unreadable files, malformed JSON, bad flags).

mod commands;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "chainscope",
    version,
    about = "Chain geometry on finite metric spaces and exact 1-D models"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a space or model file; exit 1 with the first violated
    /// axiom on failure.
    Validate { path: PathBuf },
    /// Full analysis report: isolation and merge structure for spaces,
    /// functional tables and classifiers for models.
    Analyze {
        path: PathBuf,
        /// Subset files to evaluate functionals on (repeatable).
        #[arg(long = "subset")]
        subsets: Vec<PathBuf>,
    },
    /// Covering functionals of a subset under a (k, m) budget.
    Functionals {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        subset: PathBuf,
        /// Number of centers (a positive integer or "inf").
        #[arg(long, default_value = "1")]
        k: String,
        /// Chain depth per center (a positive integer or "inf").
        #[arg(long, default_value = "1")]
        m: String,
        /// exact | greedy
        #[arg(long, default_value = "exact")]
        mode: String,
    },
    /// Space and subset classifiers for a model.
    Classify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        subset: Option<PathBuf>,
    },
    /// Merge events as CSV, with an optional DOT dendrogram.
    Scales {
        #[arg(long)]
        space: PathBuf,
        /// Write a DOT rendering of the dendrogram to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Hausdorff distance and gap between two subsets of one space.
    Hausdorff {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Box product of two spaces, as a space file.
    Product {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Discretize a model window into a space file.
    Sample {
        #[arg(long)]
        model: PathBuf,
        /// Window as two rationals: --window LO HI
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        window: Vec<String>,
        #[arg(long)]
        resolution: String,
    },
    /// Run a registered property suite; exit 1 on any failure.
    Propcheck {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match commands::run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::OutputFormat;

#[derive(Debug, Parser)]
#[command(name = "lieshadow", version, about = "Exact computations with solvable Lie algebras, nilshadows and gradings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: OutputFormat,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants, series, radicals and the Killing form.
    Analyze { file: PathBuf },
    /// Nilshadow of a solvable type (R) algebra.
    Nilshadow {
        file: PathBuf,
        /// Print only the shadow algebra in file format.
        #[arg(long)]
        emit: bool,
    },
    /// Check a modification map stored in the file (or `canonical`).
    Modcheck {
        file: PathBuf,
        #[arg(long)]
        sigma: String,
    },
    /// Emit the graph algebra of a modification map.
    Graph {
        file: PathBuf,
        #[arg(long)]
        sigma: String,
    },
    /// Grading induced by a contractive automorphism.
    Grade {
        file: PathBuf,
        #[arg(long)]
        auto: String,
        /// Report weights rescaled to minimum 1 instead of raw weights.
        #[arg(long)]
        normalize: bool,
    },
    /// Standard dilation of the grading induced by an automorphism.
    Dilate {
        file: PathBuf,
        #[arg(long)]
        auto: String,
        #[arg(long)]
        lambda: String,
    },
    /// Self-similarity threshold on normalized weights.
    Admissible {
        file: PathBuf,
        #[arg(long)]
        auto: String,
        /// Multiply the normalized weights by this factor first.
        #[arg(long, default_value = "1")]
        scale: String,
    },
    /// Growth computations.
    Growth {
        #[command(subcommand)]
        which: GrowthCommand,
    },
    /// Parse a file and print it in canonical form.
    Reformat { file: PathBuf },
    /// Built-in example algebras.
    Catalog {
        #[command(subcommand)]
        which: CatalogCommand,
    },
}

#[derive(Debug, Subcommand)]
enum GrowthCommand {
    /// Doubling ratios and growth bounds of the standard concave gauge.
    Std {
        #[arg(long, default_value_t = 3)]
        n: u32,
    },
    /// Busemann gauge and group distance on a finite metric file.
    Finite {
        file: PathBuf,
        /// Base point, scale and epsilon.
        #[arg(long, num_args = 3, value_names = ["O", "L", "EPS"])]
        busemann: Vec<String>,
    },
    /// Doubling ratios and growth bounds for the gauge section of a file.
    Curve { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    List,
    Emit { name: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

//! `ea`: validate, inspect and reconstruct finite effect algebras.
//!
//! Exit codes: 0 success or property holds, 1 property fails or not
//! isomorphic, 2 input or usage error, 3 internal disagreement.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "ea", version, about = "Finite effect algebras: axioms, structure, triple reconstruction")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// More detail: every violation, the triple-side maps.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the effect-algebra axioms.
    Validate { file: PathBuf },
    /// Report all decided properties, TRT included.
    Props { file: PathBuf },
    /// List the sharp elements.
    Sharp { file: PathBuf },
    /// List the meager elements and their sums.
    Meager { file: PathBuf },
    /// List the central elements.
    Center { file: PathBuf },
    /// List the blocks.
    Blocks { file: PathBuf },
    /// Extract the triple of a TRT-effect algebra.
    Triple {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild an effect algebra from a .triple file.
    Reconstruct {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify E ≅ Tea(E) through the triple.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        file: Option<PathBuf>,
        /// Verify every .ea file in a directory.
        #[arg(long, value_name = "DIR")]
        all: Option<PathBuf>,
    },
    /// Write a standard algebra, e.g. `gen product chain 2 diamond`.
    Gen {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        spec: Vec<String>,
    },
    /// Write every effect algebra up to a size, one file per class.
    Enum {
        #[arg(long, value_name = "N")]
        max_size: usize,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Find an isomorphism between two algebras.
    Iso { a: PathBuf, b: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

//! `gentle`: command-line front end for gentle-core.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Check gentleness and report tree, rep-finiteness and global dimension
    Validate,
    /// List every string
    Strings,
    /// Hom basis between two --seed strings
    Hom,
    /// Extensions of the first --seed string by the second
    Ext,
    /// Kernels of the minimal epimorphisms onto a --seed string
    Kernel,
    /// Minimal projective resolution of each --seed string
    Resolve,
    /// Resolving closure of the --seed strings
    ResClosure,
    /// Lattice of all resolving subcategories
    ResPoset,
    /// Join-irreducible resolving subcategories
    JoinIrreducibles,
    /// The dissected disc of a gentle tree
    Disc,
    /// Geometric resolving set of a --seed string, with its coloration
    GeoRes,
    /// Run the acceptance suite on a corpus directory or file
    CheckOracle,
    /// Write every gentle tree up to --max-vertices, plus fixtures, to a directory
    GenCorpus,
}

#[derive(Debug, Parser)]
#[command(name = "gentle", version, about = "Strings, extensions and resolving subcategories of gentle quivers")]
pub struct Cli {
    pub verb: Verb,
    /// Quiver file; a corpus directory for check-oracle, the output directory for gen-corpus
    pub path: Option<PathBuf>,
    /// Also write JSON output here
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write a Graphviz drawing here
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Write an SVG drawing here
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// A string such as "e(2)" or "b+a+"; repeatable
    #[arg(long = "seed", value_name = "STRING")]
    pub seeds: Vec<String>,
    #[arg(long, value_name = "N", default_value_t = 4)]
    pub max_vertices: usize,
    /// Worker threads for corpus jobs (default: all cores)
    #[arg(long, value_name = "N")]
    pub jobs: Option<usize>,
}

/// Exit status 1 is a domain error, 2 a usage error.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(anyhow::Error),
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Domain(e.into())
            }
        }
    )*};
}

domain_errors!(anyhow::Error, gentle_core::Error, gentle_core::QuiverError, std::io::Error, serde_json::Error);

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun `gentle --help` for the accepted verbs and flags.");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! `graphca`: build, factor, and verify covering arrays on graphs.
//!
//! JSON reports go to stdout, human diagnostics to stderr. Exit codes:
//! 0 success, 1 verification failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod cafile;
mod commands;
mod dimacs;
mod groupjson;
mod report;

use commands::BuildArgs;
use report::CommandReport;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable/invalid files. Exit code 2.
    Usage(String),
    /// A covering array failed verification. Exit code 1.
    Verification {
        message: String,
        report: Option<Box<CommandReport>>,
    },
}

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError::Usage(message)
    }

    pub fn verification(message: String, report: Option<Box<CommandReport>>) -> Self {
        CliError::Verification { message, report }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Verification { message, .. } => write!(f, "{message}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "graphca",
    about = "Covering arrays on graphs: products, factorization, constructions, verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a named graph family as a DIMACS .col file
    Make {
        /// path, cycle, complete, edgeless or circulant
        #[arg(long)]
        family: String,
        /// Vertex count (modulus for circulant)
        #[arg(long)]
        size: usize,
        /// Circulant connection set, e.g. 1,4
        #[arg(long)]
        conn: Option<String>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Product of 2..=6 factor graphs
    Product {
        /// cartesian, direct, strong or lex
        #[arg(long)]
        op: String,
        /// Factor .col files
        #[arg(required = true, num_args = 2..)]
        factors: Vec<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
        /// Also write "vertex: (x1, ..., xk)" coordinate lines
        #[arg(long)]
        coords: Option<PathBuf>,
    },
    /// Prime factorization over the Cartesian product
    Factor {
        /// Graph .col file; factors land next to it as <stem>.factorN.col
        graph: PathBuf,
    },
    /// Strength-2 orthogonal array as a .ca file
    Oa {
        /// Alphabet size
        #[arg(long)]
        g: usize,
        /// Use the composite construction (any g >= 2)
        #[arg(long)]
        bush: bool,
        /// Output path; defaults to oa<g>.ca
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a covering array with a named strategy
    Build(BuildCli),
    /// Factor the graph and lift an array from its largest prime factor
    Approx {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        g: usize,
        #[arg(short, long)]
        out: PathBuf,
        /// Also write the strategy report as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check a covering array against a graph; exit 1 on failure
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        ca: PathBuf,
    },
    /// Clique, colouring and covering-array bounds for a graph
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        /// Alphabet size to substitute into the bound text
        #[arg(long)]
        g: Option<usize>,
    },
}

#[derive(clap::Args)]
pub struct BuildCli {
    /// strong, box, direct, lex, coloring, cayley2, cayley3, cayley4 or approx
    #[arg(long)]
    strategy: String,
    /// Factor graphs (repeatable); the second factor for cayley strategies
    #[arg(long = "graph")]
    graphs: Vec<PathBuf>,
    /// Alphabet size
    #[arg(long)]
    g: usize,
    /// Group JSON path or builtin (cyclic:N, dihedral:N, symmetric:N, quaternion8)
    #[arg(long)]
    group: Option<String>,
    /// Connection-set JSON path: {"S": [elements]}
    #[arg(long = "conn-set")]
    conn_set: Option<PathBuf>,
    /// Covering array .ca inputs by factor position (repeatable); missing
    /// factors fall back to the colouring construction
    #[arg(long = "ca-in")]
    ca_in: Vec<PathBuf>,
    /// Witness pair "s1,s2" for cayley3/cayley4 (default: first found)
    #[arg(long, allow_hyphen_values = true)]
    witness: Option<String>,
    /// Translation element for cayley2 (default: first in the set)
    #[arg(long, allow_hyphen_values = true)]
    translate: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

impl From<BuildCli> for BuildArgs {
    fn from(b: BuildCli) -> Self {
        BuildArgs {
            strategy: b.strategy,
            graphs: b.graphs,
            g: b.g,
            group: b.group,
            conn_set: b.conn_set,
            ca_in: b.ca_in,
            witness: b.witness,
            translate: b.translate,
            out: b.out,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Verification { message, report }) => {
            if let Some(report) = report {
                println!("{}", serde_json::to_string_pretty(&*report).unwrap());
            }
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

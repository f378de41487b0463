//! `cptensor`: exact certificates for completely positive symmetric tensors.
//!
//! Exit codes: 0 positive certificate or finished computation, 1 negative
//! certificate, 2 precondition not met or inconclusive, 64 usage error,
//! 65 malformed input file, 66 unreadable input file.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cptensor::oracle::DEFAULT_NODE_CAP;

#[derive(Parser)]
#[command(
    name = "cptensor",
    version,
    about = "Exact certification of completely positive symmetric tensors"
)]
struct Cli {
    /// Print the report as a JSON object.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gramian tensor of the columns of a factor matrix.
    Gram {
        file: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Dimension-2 certificates: {0,1}-CP rank, CP construction, pairwise test.
    #[command(name = "certify-dim2")]
    CertifyDim2 { file: PathBuf },
    /// {0,1}-CP certificate of a (0,1) tensor via its irreducible blocks.
    #[command(name = "certify-01")]
    Certify01 { file: PathBuf },
    /// Rank-one certificate for a multi-hypergraph with one maximal base set.
    #[command(name = "certify-hypergraph")]
    CertifyHypergraph { file: PathBuf },
    /// Property R of a multi-hypergraph.
    #[command(name = "property-r")]
    PropertyR { file: PathBuf },
    /// Adjacency tensor of a multi-hypergraph.
    Adjacency { file: PathBuf },
    /// Indicator matrix W of a multi-hypergraph, with W W^T.
    Indicator { file: PathBuf },
    /// Exhaustive search for a minimal {0,1} decomposition.
    Oracle {
        file: PathBuf,
        /// Largest number of factors to try; defaults to the diagonal sum.
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: u64,
    },
    /// Evaluate A x^m and/or verify a decomposition given as factor columns.
    Eval {
        file: PathBuf,
        /// Point x as comma-separated exact values.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Factor matrix whose columns are the decomposition factors.
        #[arg(long)]
        factors: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::USAGE } else { 0 });
        }
    };
    let outcome = commands::run(&cli.command);
    match outcome {
        Ok((report, code)) => {
            let text = if cli.json {
                report.render_json()
            } else {
                report.render_text()
            };
            print!("{text}");
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("cptensor: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

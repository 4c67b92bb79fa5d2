use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Corollary {
    N2,
    N3,
}

#[derive(Debug, Parser)]
#[command(
    name = "ellfib",
    version,
    about = "Exact invariants of genus one fibrations with an n-section"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
#[command(rename_all = "kebab-case")]
pub enum Command {
    /// List admissible splitting types of rank n and degree delta.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
    },
    /// Check one splitting type against every admissibility bound.
    Check {
        /// Comma-separated twists, ascending (unsorted input is sorted with a warning).
        #[arg(long = "type", allow_hyphen_values = true)]
        twists: String,
        #[arg(long)]
        d: i64,
    },
    /// Slope-gap bounds for every sub/quotient rank, plus the top and bottom gap bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: i64,
        /// Use the sharper bounds valid over P^1.
        #[arg(long)]
        p1: bool,
    },
    /// D^2 thresholds for vanishing h^1 and base point freeness.
    Thresholds {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 0)]
        g: i64,
    },
    /// Number of components for primitive n-torsion data.
    Components {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        n: i64,
    },
    /// Pontrjagin square, divisibility and component label of a class mod n.
    Pontrjagin {
        /// JSON Gram matrix (array of integer arrays).
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        n: u64,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Reflection orbits of primitive classes mod n.
    ///
    /// TSV columns: coords (comma-joined), divisibility, pontrjagin, orbit.
    Orbit {
        /// JSON Gram matrix (array of integer arrays).
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        root_bound: i64,
        /// Largest n^rank to search.
        #[arg(long, default_value_t = ellfib_core::lattice::DEFAULT_ORBIT_BUDGET)]
        budget: u128,
    },
    /// Write the Gram matrix of (2d-2)U + d(-E8) as JSON.
    Lattice {
        #[arg(long)]
        d: i64,
    },
    /// Double cover of F_a with d = N - a.
    Cover2 {
        #[arg(long)]
        a: i64,
        #[arg(long = "N")]
        big_n: i64,
        /// Report D_t^2, h^1 and base locus at this twist.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
    },
    /// Triple cover in P(O + O(-a) + O(-b)) with d = N - a - b.
    Cover3 {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long = "N")]
        big_n: i64,
        /// Report D_t^2, h^1 and base locus at this twist.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
    },
    /// Cohomology of O(k xi + t P) on P(O + O(-a_2) + ...).
    Leray {
        /// Comma-separated nonnegative drops a_2, ..., a_n.
        #[arg(long)]
        drops: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
    /// Smooth rational curve with D.F = n on a rational elliptic surface.
    Ratsurf {
        #[arg(long)]
        n: i64,
    },
    /// Sharpness tables for n = 2 or n = 3 over a range of d.
    Tables {
        #[arg(long, value_enum)]
        corollary: Corollary,
        #[arg(long, default_value_t = 2)]
        dmin: i64,
        #[arg(long, default_value_t = 10)]
        dmax: i64,
    },
    /// Discriminant of the extension attached to a rank-r subbundle of degree delta_w.
    Extension {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        delta_w: i64,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
        #[arg(long)]
        d: i64,
    },
    /// Exhaustive check of dim End >= e over semistable types.
    RegLemma {
        #[arg(long)]
        e: u64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n0: i64,
        #[arg(long, default_value_t = 1)]
        r0: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command, cli.format) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Validation { output, message }) => {
            print!("{output}");
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

//! `posetctl`: command-line front end for poset spaces.
//!
//! Exit codes: 0 when every check passes, 1 when a property check fails
//! (the witness is in the report), 2 on usage, input or parse errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use poset_spaces::filters::FilterKind;
use poset_spaces::topology::Mode;

use crate::commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "posetctl", version, about = "Filters, poset spaces, constructions and games on finite posets")]
pub struct Cli {
    /// Seed for random sweeps and players.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search budget for lazily generated posets and grids.
    #[arg(long, global = true, default_value_t = 4)]
    pub budget: usize,
    /// Depth bound for truncated constructions.
    #[arg(long, global = true, default_value_t = 2)]
    pub depth: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceCheck {
    None,
    Separation,
    Reduction,
    Restriction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainCheck {
    Lemma,
    WayBelow,
    Completion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construct {
    Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderCheck {
    All,
    Axioms,
    Completeness,
    Poset,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the filters of a poset.
    Filters {
        file: PathBuf,
        #[arg(long, default_value = "maximal")]
        kind: FilterKind,
        /// Classify a set given as `a,b,…`.
        #[arg(long, value_name = "ELEMS")]
        classify: Vec<String>,
        /// Extend the filter generated by `a,b,…` to a maximal filter.
        #[arg(long, value_name = "ELEMS")]
        extend: Vec<String>,
        /// Work on the order dual.
        #[arg(long)]
        dual: bool,
        /// Also list incompatible pairs.
        #[arg(long)]
        incompatible: bool,
    },
    /// Describe MF(P) or UF(P), or the poset of opens of a space file.
    Space {
        file: PathBuf,
        #[arg(long, default_value = "mf")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "none")]
        check: SpaceCheck,
        /// Seed set for the reduction check, `a,b,…`; defaults to all elements.
        #[arg(long, value_name = "ELEMS")]
        basis: Option<String>,
        /// Subposet for the restriction check, `a,b,…`.
        #[arg(long, value_name = "ELEMS")]
        subset: Option<String>,
    },
    /// Product of posets and its MF correspondence.
    Product {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Poset for a G_δ subspace given by opens `NAME=a,b,…`.
    Gdelta {
        file: PathBuf,
        /// An open set, generated by the listed elements.
        #[arg(long = "open", value_name = "NAME=ELEMS")]
        opens: Vec<String>,
        #[arg(long, default_value = "mf")]
        mode: Mode,
        /// Restrict UF(P) to a single open set instead.
        #[arg(long)]
        open_subspace: bool,
    },
    /// Formal balls over a rational metric.
    Formalballs {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_denom: i64,
        #[arg(long, default_value = "4")]
        max_radius: String,
    },
    /// Solve the star game on a finite poset.
    Stargame { file: PathBuf },
    /// Play the star game against II's sequence `f`.
    StargamePlay {
        /// `bintree` or a poset file.
        #[arg(long)]
        poset: String,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 20)]
        rounds: usize,
    },
    /// Strong Choquet games: random I against the canonical II.
    Choquet {
        file: PathBuf,
        #[arg(long, default_value = "mf")]
        mode: Mode,
        #[arg(long, default_value_t = 10)]
        rounds: usize,
        #[arg(long, default_value_t = 20)]
        games: usize,
    },
    /// Condition poset built from the canonical Choquet strategy.
    MfCharacterize {
        file: PathBuf,
        /// Cap on the number of plays per condition.
        #[arg(long)]
        play_cap: Option<usize>,
    },
    /// Way-below relation, filter completion and the Scott topology on maximal points.
    Domain {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "lemma")]
        check: DomainCheck,
        /// Use ideals instead of filters for the completion.
        #[arg(long)]
        ideal: bool,
    },
    /// Semi-topogenous orders: from a space file, or from a poset file.
    TopoOrder {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "interval")]
        construct: Construct,
        #[arg(long, value_enum, default_value = "all")]
        check: OrderCheck,
    },
    /// Descending chain meeting dense sets, extended to a maximal filter.
    Baire {
        /// `bintree` or a poset file.
        #[arg(long)]
        poset: String,
        /// A dense set `a,b,…`; repeatable. Defaults to the minimal elements.
        #[arg(long, value_name = "ELEMS")]
        dense: Vec<String>,
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = 10)]
        rounds: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report.text());
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Text(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

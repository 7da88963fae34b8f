//! Library side of the `egh` command: input language, reports and the
//! subcommands. `main.rs` only parses arguments, prints, and exits.

pub mod commands;
pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use egh_core::mideal::DEFAULT_SLICE_BUDGET;
use egh_core::polyfp::MonomialOrder;

pub use input::{parse_input, InputDocument, InputError};
pub use report::{Format, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(#[from] InputError),
    #[error("{0}")]
    Core(#[from] egh_core::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OrderArg {
    Lex,
    #[default]
    Degrevlex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Lex => MonomialOrder::Lex,
            OrderArg::Degrevlex => MonomialOrder::DegRevLex,
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Largest degree to tabulate (defaults depend on the command).
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    /// Master seed for campaigns.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of campaign instances.
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    /// Worker threads for campaigns (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Degrevlex)]
    pub order: OrderArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest degree slice (or subset family) a command may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_SLICE_BUDGET)]
    pub budget: u128,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_degree: None,
            seed: 0,
            trials: 100,
            jobs: 0,
            order: OrderArg::Degrevlex,
            format: Format::Text,
            budget: DEFAULT_SLICE_BUDGET,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "egh", version, about = "Hilbert functions, lex-plus-powers ideals and EGH checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Hilbert function of the document's ideal.
    Hilbert { file: PathBuf },
    /// Lex-plus-powers ideal with the same Hilbert function.
    Lpp { file: PathBuf },
    /// Growth bounds for one degree.
    Growth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        q: u64,
    },
    /// Per-degree EGH check of the document's ideal.
    Egh { file: PathBuf },
    /// Liaison table against the pure powers.
    Liaison { file: PathBuf },
    /// Slice construction along the last variable.
    Slice { file: PathBuf },
    /// Randomized campaign over ideals containing a regular sequence.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degrees: String,
        #[arg(long, default_value_t = 101)]
        p: u32,
    },
    /// Exhaustive shadow comparison against lex segments.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degrees: String,
    },
}

/// Reads a document from a path, `-` meaning standard input.
pub fn load_document(path: &std::path::Path) -> Result<InputDocument, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io)?
    } else {
        std::fs::read_to_string(path).map_err(io)?
    };
    Ok(parse_input(&text)?)
}

pub fn execute(cli: &Cli) -> Result<RunReport, CliError> {
    let o = &cli.options;
    match &cli.command {
        Command::Hilbert { file } => commands::hilbert(&load_document(file)?, o),
        Command::Lpp { file } => commands::lpp(&load_document(file)?, o),
        Command::Egh { file } => commands::egh(&load_document(file)?, o),
        Command::Liaison { file } => commands::liaison(&load_document(file)?, o),
        Command::Slice { file } => commands::slice(&load_document(file)?, o),
        Command::Growth { n, degrees, d, q } => commands::growth(*n, degrees, *d, *q, o),
        Command::Verify { n, degrees, p } => commands::verify(*n, degrees, *p, o),
        Command::Search { n, degrees } => commands::search(*n, degrees, o),
    }
}

pub fn exit_code(report: &RunReport) -> i32 {
    if report.violations > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

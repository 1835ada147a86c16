//! The `sr-chroma` command line: argument and config handling, dispatch, and
//! report emission.

pub mod commands;
pub mod config;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use config::{parse_cap, parse_relations, RunConfig};
use report::{Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<sr_chroma::Error> for CliError {
    fn from(e: sr_chroma::Error) -> CliError {
        match e {
            sr_chroma::Error::SearchSpaceTooLarge { .. } => CliError::Cap(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

#[derive(Debug, Parser)]
#[command(name = "sr-chroma", version, about = "Span colorings, Steenrod action search and realizability certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Default, Args)]
pub struct Options {
    /// `key = value` file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Prime p.
    #[arg(short, long, global = true)]
    pub p: Option<u32>,
    /// A, Ap, Bp or B.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Comma-separated block sizes, e.g. `3,3`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub vector: Option<String>,
    /// Polynomial generators `label:degree,...` instead of a graph family.
    #[arg(long, global = true)]
    pub generators: Option<String>,
    /// Highest degree checked; defaults to 2p^2 + 2p.
    #[arg(long, global = true)]
    pub degree_bound: Option<u32>,
    /// basic or adem.
    #[arg(long, global = true)]
    pub relations: Option<String>,
    /// Degree multiset family file (`set ...` / `chain start step` lines).
    #[arg(long, global = true)]
    pub multisets: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Bound on p^|B| for the action search, or `none`.
    #[arg(long, global = true)]
    pub cap: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact chromatic number, optionally with the span-chromatic number.
    Chromatic {
        graph: Option<PathBuf>,
        #[arg(long)]
        span: Option<u32>,
    },
    /// Least dimension of a span coloring over F_p.
    SpanChromatic { graph: Option<PathBuf> },
    /// Builds the join complex of a family and a graph.
    BuildComplex { graph: Option<PathBuf> },
    /// Exhaustive search for an unstable action.
    ActionSearch { graph: Option<PathBuf> },
    /// Checks a table of P^k values.
    ActionCheck {
        #[arg(long)]
        table: Option<PathBuf>,
        graph: Option<PathBuf>,
    },
    /// The span-chromatic necessary condition.
    Necessary { graph: Option<PathBuf> },
    /// Coloring partition for uniform block sizes.
    Partition {
        graph: Option<PathBuf>,
        /// A or B; inferred from the family when omitted.
        #[arg(long)]
        scheme: Option<String>,
    },
    /// Splits s = s' + s'' for a number of colors.
    Decompose {
        graph: Option<PathBuf>,
        /// Number of colors; defaults to the chromatic number of the graph.
        #[arg(short, long)]
        c: Option<usize>,
    },
    /// Decides whether a degree multiset splits into allowed sets.
    Multiset {
        /// Comma-separated even degrees.
        degrees: String,
    },
    /// Full realizability verdict.
    Realizable { graph: Option<PathBuf> },
}

impl Cli {
    fn config(&self) -> Result<RunConfig, CliError> {
        let o = &self.options;
        let file = match &o.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let (graph, scheme, c) = match &self.command {
            Command::Chromatic { graph, .. }
            | Command::SpanChromatic { graph }
            | Command::BuildComplex { graph }
            | Command::ActionSearch { graph }
            | Command::ActionCheck { graph, .. }
            | Command::Necessary { graph }
            | Command::Realizable { graph } => (graph.clone(), None, None),
            Command::Partition { graph, scheme } => (graph.clone(), scheme.clone(), None),
            Command::Decompose { graph, c } => (graph.clone(), None, *c),
            Command::Multiset { .. } => (None, None, None),
        };
        let table = match &self.command {
            Command::ActionCheck { table, .. } => table.clone(),
            _ => None,
        };
        let flags = RunConfig {
            p: o.p,
            family: o.family.clone(),
            vector: o.vector.clone(),
            generators: o.generators.clone(),
            graph,
            table,
            degree_bound: o.degree_bound,
            relations: o.relations.as_deref().map(parse_relations).transpose()?,
            multisets: o.multisets.clone(),
            format: o.format,
            cap: o.cap.as_deref().map(parse_cap).transpose()?,
            scheme,
            c,
        };
        Ok(file.overlay(flags))
    }
}

/// Runs one invocation and returns the rendered report with its exit code.
pub fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let cfg = cli.config()?;
    let report: Report = match &cli.command {
        Command::Chromatic { span, .. } => commands::chromatic(&cfg, *span)?,
        Command::SpanChromatic { .. } => commands::span_chromatic(&cfg)?,
        Command::BuildComplex { .. } => commands::complex_report(&cfg)?,
        Command::ActionSearch { .. } => commands::action_search(&cfg)?,
        Command::ActionCheck { .. } => commands::action_check(&cfg)?,
        Command::Necessary { .. } => commands::necessary(&cfg)?,
        Command::Partition { .. } => commands::partition(&cfg)?,
        Command::Decompose { .. } => commands::decompose(&cfg)?,
        Command::Multiset { degrees } => commands::multiset(&cfg, degrees)?,
        Command::Realizable { .. } => commands::realizable(&cfg)?,
    };
    Ok((report.render(cfg.format.unwrap_or(Format::Text)), report.exit_code()))
}

/// Parses `args`, runs, prints, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

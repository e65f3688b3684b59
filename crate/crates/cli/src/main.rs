//! `infonet`: ingest prices, build correlation networks, compute centralities
//! and run rolling-window analyses.

mod commands;
mod config;
mod error;
mod staging;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{AlignmentArg, FileConfig, FilterArg, MeasureArg, MetricArg, TimestampArg};
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "infonet", version, about = "Correlation-network centrality analysis of return panels")]
struct Cli {
    /// JSON or TOML file of run settings; flags take precedence over it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output directory. Created if missing; files are only placed there once
    /// every output of the command has been written.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads [default: available processors].
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// One of off, error, warn, info, debug, trace [default: warn].
    #[arg(long, global = true, value_name = "LEVEL")]
    log_level: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse price files, filter symbols and write a 1-minute log-return panel.
    Ingest(IngestArgs),
    /// Correlation matrix, similarity graph and filtered network of a panel.
    Net(NetArgs),
    /// Node centralities and top-k rankings of a network.
    Centrality(CentralityArgs),
    /// Rolling-window centrality series of a panel.
    Roll(RollArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Price files with symbol, timestamp and price columns (comma or tab delimited).
    #[arg(long, value_name = "FILE", num_args = 1..)]
    pub input: Vec<PathBuf>,

    /// Quote currency a symbol must trade in [default: USD].
    #[arg(long)]
    pub quote: Option<String>,

    /// Base-asset fragments to exclude, comma separated [default: BEAR,BULL,HALF,HEDGE].
    #[arg(long, value_delimiter = ',', value_name = "FRAGMENTS")]
    pub exclude: Option<Vec<String>>,

    /// Symbols or base assets to exclude, comma separated [default: fiat currencies].
    #[arg(long, value_delimiter = ',', value_name = "SYMBOLS")]
    pub exclude_symbols: Option<Vec<String>>,

    /// Keep every symbol quoted in the quote currency, ignoring both exclusion lists.
    #[arg(long)]
    pub no_exclusions: bool,

    /// First grid instant, RFC 3339 [default: first price, floored to the minute].
    #[arg(long, value_name = "TIME")]
    pub start: Option<String>,

    /// Last grid instant, RFC 3339 [default: last price, floored to the minute].
    #[arg(long, value_name = "TIME")]
    pub end: Option<String>,

    /// Longest a price is carried forward, in minutes [default: 30].
    #[arg(long, value_name = "MINUTES")]
    pub max_gap_minutes: Option<u32>,

    /// Minimum share of observed return steps for a symbol to be kept [default: 0.5].
    #[arg(long, value_name = "FRACTION")]
    pub min_coverage: Option<f64>,

    /// Timestamp encoding of the price files [default: auto].
    #[arg(long, value_enum)]
    pub timestamp_format: Option<TimestampArg>,
}

#[derive(Debug, Args)]
pub struct NetArgs {
    /// Return panel written by `ingest`; a sibling .json sidecar is used if present.
    #[arg(long, value_name = "FILE")]
    pub panel: Option<PathBuf>,

    /// Network filter [default: tmfg].
    #[arg(long, value_enum)]
    pub filter: Option<FilterArg>,

    /// Edge length used by the spanning tree [default: mantegna].
    #[arg(long, value_enum)]
    pub metric: Option<MetricArg>,

    /// Only use returns stamped after this instant, RFC 3339.
    #[arg(long, value_name = "TIME")]
    pub start: Option<String>,

    /// Only use returns stamped at or before this instant, RFC 3339.
    #[arg(long, value_name = "TIME")]
    pub end: Option<String>,

    /// Number of most correlated pairs to list [default: 20].
    #[arg(long, value_name = "K")]
    pub top_pairs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CentralityArgs {
    /// Edge list written by `net`.
    #[arg(long, value_name = "FILE", conflicts_with = "matrix")]
    pub graph: Option<PathBuf>,

    /// Network sidecar for `--graph` [default: network.json next to the edge list].
    #[arg(long, value_name = "FILE")]
    pub graph_meta: Option<PathBuf>,

    /// Labelled symmetric weight matrix used directly as the network; the diagonal is ignored.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,

    /// Measures to compute, comma separated [default: all].
    #[arg(long, value_enum, value_delimiter = ',')]
    pub measures: Option<Vec<MeasureArg>>,

    /// Rows per measure in the rankings [default: 20].
    #[arg(long, value_name = "K")]
    pub top: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RollArgs {
    /// Return panel written by `ingest`; a sibling .json sidecar is used if present.
    #[arg(long, value_name = "FILE")]
    pub panel: Option<PathBuf>,

    /// Window width, e.g. 24h, 90m, 1d [default: 24h].
    #[arg(long, value_name = "DURATION")]
    pub width: Option<String>,

    /// Step between window ends [default: 1h].
    #[arg(long, value_name = "DURATION")]
    pub step: Option<String>,

    /// Placement of window ends [default: calendar].
    #[arg(long, value_enum)]
    pub alignment: Option<AlignmentArg>,

    /// Network filter [default: tmfg].
    #[arg(long, value_enum)]
    pub filter: Option<FilterArg>,

    /// Edge length used by the spanning tree [default: mantegna].
    #[arg(long, value_enum)]
    pub metric: Option<MetricArg>,

    /// Measures to compute, comma separated [default: all].
    #[arg(long, value_enum, value_delimiter = ',')]
    pub measures: Option<Vec<MeasureArg>>,

    /// Percentile bands as LOWER:UPPER pairs, comma separated [default: 10:90,25:75].
    #[arg(long, value_delimiter = ',', value_name = "PAIRS")]
    pub percentiles: Option<Vec<String>>,

    /// Also write every series divided by its network average.
    #[arg(long)]
    pub normalize: bool,

    /// Events file (timestamp,label) copied into the outputs and manifest.
    #[arg(long, value_name = "FILE")]
    pub events: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let global = config::Global::resolve(cli.out, cli.threads, cli.log_level, &file)?;
    global.install()?;
    log::info!("running with {} threads", rayon::current_num_threads());
    match cli.command {
        Command::Ingest(a) => commands::ingest(config::IngestConfig::resolve(a, &file)?, &global),
        Command::Net(a) => commands::net(config::NetConfig::resolve(a, &file)?, &global),
        Command::Centrality(a) => {
            commands::centrality(config::CentralityConfig::resolve(a, &file)?, &global)
        }
        Command::Roll(a) => commands::roll(config::RollConfig::resolve(a, &file)?, &global),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e.to_string().replace('\n', " "));
            ExitCode::from(e.exit_status())
        }
    }
}

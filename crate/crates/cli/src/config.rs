//! Run settings: flags override the config file, which overrides defaults.

use std::collections::BTreeSet;
use std::io;
use std::path::{Path, PathBuf};

use chrono::{DateTime, TimeDelta, Utc};
use clap::ValueEnum;
use log::LevelFilter;
use serde::{Deserialize, Serialize};

use infonet::centrality::Measure;
use infonet::filtergraph::MstMetric;
use infonet::marketdata::{PanelConfig, SymbolFilter, TimestampFormat};
use infonet::rolling::{Alignment, NetworkFilter, PercentilePair, WindowSpec};

use crate::error::{CliError, Result};
use crate::{CentralityArgs, IngestArgs, NetArgs, RollArgs};

const DEFAULT_OUT: &str = "infonet-out";
const DEFAULT_TOP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureArg {
    Degree,
    Closeness,
    Information,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Degree => Measure::Degree,
            MeasureArg::Closeness => Measure::Closeness,
            MeasureArg::Information => Measure::Information,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterArg {
    Tmfg,
    Mst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricArg {
    Mantegna,
    InverseWeight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlignmentArg {
    Calendar,
    DataRelative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimestampArg {
    Auto,
    Rfc3339,
    EpochMillis,
}

/// Keys accepted in a config file. Relative paths are taken relative to the
/// file's directory.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    input: Option<Vec<PathBuf>>,
    panel: Option<PathBuf>,
    graph: Option<PathBuf>,
    graph_meta: Option<PathBuf>,
    matrix: Option<PathBuf>,
    events: Option<PathBuf>,
    quote: Option<String>,
    exclude: Option<Vec<String>>,
    exclude_symbols: Option<Vec<String>>,
    no_exclusions: Option<bool>,
    start: Option<String>,
    end: Option<String>,
    max_gap_minutes: Option<u32>,
    min_coverage: Option<f64>,
    timestamp_format: Option<TimestampArg>,
    filter: Option<FilterArg>,
    metric: Option<MetricArg>,
    measures: Option<Vec<MeasureArg>>,
    top: Option<usize>,
    top_pairs: Option<usize>,
    width: Option<String>,
    step: Option<String>,
    alignment: Option<AlignmentArg>,
    percentiles: Option<Vec<[f64; 2]>>,
    normalize: Option<bool>,
    out: Option<PathBuf>,
    threads: Option<usize>,
    log_level: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let mut cfg: FileConfig = if is_json {
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        } else {
            toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        };
        let base = path.parent().unwrap_or(Path::new("")).to_path_buf();
        let rebase = |p: &mut Option<PathBuf>| {
            if let Some(p) = p {
                *p = base.join(&*p);
            }
        };
        rebase(&mut cfg.panel);
        rebase(&mut cfg.graph);
        rebase(&mut cfg.graph_meta);
        rebase(&mut cfg.matrix);
        rebase(&mut cfg.events);
        rebase(&mut cfg.out);
        if let Some(inputs) = &mut cfg.input {
            for p in inputs {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Settings shared by every subcommand.
#[derive(Debug)]
pub struct Global {
    pub out: PathBuf,
    pub threads: usize,
    pub log_level: LevelFilter,
}

impl Global {
    pub fn resolve(
        out: Option<PathBuf>,
        threads: Option<usize>,
        log_level: Option<String>,
        file: &FileConfig,
    ) -> Result<Self> {
        let out = out.or_else(|| file.out.clone()).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
        let threads = match threads.or(file.threads) {
            Some(0) => return Err(CliError::Config("threads must be at least 1".into())),
            Some(n) => n,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        let level = log_level.or_else(|| file.log_level.clone()).unwrap_or_else(|| "warn".into());
        let log_level = level
            .parse()
            .map_err(|_| CliError::Config(format!("unknown log level `{level}`")))?;
        Ok(Global {
            out,
            threads,
            log_level,
        })
    }

    pub fn install(&self) -> Result<()> {
        let _ = env_logger::Builder::new().filter_level(self.log_level).try_init();
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))
    }
}

fn existing_file(path: PathBuf) -> Result<PathBuf> {
    if path.is_file() {
        Ok(path)
    } else {
        Err(CliError::Io {
            path,
            source: io::Error::new(io::ErrorKind::NotFound, "no such file"),
        })
    }
}

fn required(value: Option<PathBuf>, flag: &str) -> Result<PathBuf> {
    value
        .ok_or_else(|| CliError::Config(format!("`--{flag}` is required")))
        .and_then(existing_file)
}

fn instant(s: Option<String>, key: &str) -> Result<Option<DateTime<Utc>>> {
    s.map(|s| {
        DateTime::parse_from_rfc3339(&s)
            .map(|t| t.with_timezone(&Utc))
            .map_err(|e| CliError::Config(format!("{key} `{s}`: {e}")))
    })
    .transpose()
}

/// Parses `90`, `90m`, `24h` or `1d` into whole minutes.
pub fn parse_duration(s: &str) -> Result<TimeDelta> {
    let s = s.trim();
    let split = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    let (num, unit) = s.split_at(split);
    let bad = || CliError::Config(format!("bad duration `{s}`, expected e.g. 30m, 24h or 1d"));
    let n: i64 = num.parse().map_err(|_| bad())?;
    let minutes = match unit {
        "" | "m" | "min" => 1,
        "h" => 60,
        "d" => 24 * 60,
        _ => return Err(bad()),
    };
    Ok(TimeDelta::minutes(n * minutes))
}

fn percentile_pair(s: &str) -> Result<[f64; 2]> {
    let bad = || CliError::Config(format!("bad percentile pair `{s}`, expected LOWER:UPPER"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok([a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?])
}

fn measures(flag: Option<Vec<MeasureArg>>, file: &Option<Vec<MeasureArg>>) -> Result<Vec<Measure>> {
    let chosen: BTreeSet<Measure> = match flag.or_else(|| file.clone()) {
        Some(list) => list.into_iter().map(Measure::from).collect(),
        None => Measure::ALL.into_iter().collect(),
    };
    if chosen.is_empty() {
        return Err(CliError::Config("no measures selected".into()));
    }
    Ok(chosen.into_iter().collect())
}

fn network_filter(filter: Option<FilterArg>, metric: Option<MetricArg>, file: &FileConfig) -> NetworkFilter {
    let metric = match metric.or(file.metric).unwrap_or(MetricArg::Mantegna) {
        MetricArg::Mantegna => MstMetric::Mantegna,
        MetricArg::InverseWeight => MstMetric::InverseWeight,
    };
    match filter.or(file.filter).unwrap_or(FilterArg::Tmfg) {
        FilterArg::Tmfg => NetworkFilter::Tmfg,
        FilterArg::Mst => NetworkFilter::Mst(metric),
    }
}

fn positive(v: usize, key: &str) -> Result<usize> {
    if v == 0 {
        return Err(CliError::Config(format!("{key} must be at least 1")));
    }
    Ok(v)
}

#[derive(Debug, Serialize)]
pub struct IngestConfig {
    pub inputs: Vec<PathBuf>,
    pub filter: SymbolFilter,
    pub start: Option<DateTime<Utc>>,
    pub end: Option<DateTime<Utc>>,
    pub panel: PanelConfig,
    pub timestamp_format: TimestampArg,
}

impl IngestConfig {
    pub fn resolve(a: IngestArgs, file: &FileConfig) -> Result<Self> {
        let inputs = if a.input.is_empty() { file.input.clone().unwrap_or_default() } else { a.input };
        if inputs.is_empty() {
            return Err(CliError::Config("`--input` is required".into()));
        }
        let inputs = inputs.into_iter().map(existing_file).collect::<Result<Vec<_>>>()?;

        let quote = a.quote.or_else(|| file.quote.clone()).unwrap_or_else(|| "USD".into());
        let mut filter = if a.no_exclusions || file.no_exclusions == Some(true) {
            SymbolFilter::quote_only(&quote)
        } else {
            SymbolFilter::for_quote(&quote)
        };
        if let Some(ex) = a.exclude.or_else(|| file.exclude.clone()) {
            filter.exclude_substrings = ex.into_iter().filter(|s| !s.is_empty()).collect();
        }
        if let Some(ex) = a.exclude_symbols.or_else(|| file.exclude_symbols.clone()) {
            filter.exclude_symbols = ex.into_iter().filter(|s| !s.is_empty()).collect();
        }

        let defaults = PanelConfig::default();
        let panel = PanelConfig {
            max_gap_minutes: a.max_gap_minutes.or(file.max_gap_minutes).unwrap_or(defaults.max_gap_minutes),
            min_coverage: a.min_coverage.or(file.min_coverage).unwrap_or(defaults.min_coverage),
        };
        if !(0.0..=1.0).contains(&panel.min_coverage) {
            return Err(CliError::Config(format!("min_coverage {} is outside [0, 1]", panel.min_coverage)));
        }
        let start = instant(a.start.or_else(|| file.start.clone()), "start")?;
        let end = instant(a.end.or_else(|| file.end.clone()), "end")?;
        if let (Some(s), Some(e)) = (start, end) {
            if s >= e {
                return Err(CliError::Config(format!("start {s} is not before end {e}")));
            }
        }
        Ok(IngestConfig {
            inputs,
            filter,
            start,
            end,
            panel,
            timestamp_format: a.timestamp_format.or(file.timestamp_format).unwrap_or(TimestampArg::Auto),
        })
    }

    pub fn timestamp(&self) -> TimestampFormat {
        match self.timestamp_format {
            TimestampArg::Auto => TimestampFormat::Auto,
            TimestampArg::Rfc3339 => TimestampFormat::Rfc3339,
            TimestampArg::EpochMillis => TimestampFormat::EpochMillis,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct NetConfig {
    pub panel: PathBuf,
    pub filter: NetworkFilter,
    pub start: Option<DateTime<Utc>>,
    pub end: Option<DateTime<Utc>>,
    pub top_pairs: usize,
}

impl NetConfig {
    pub fn resolve(a: NetArgs, file: &FileConfig) -> Result<Self> {
        Ok(NetConfig {
            panel: required(a.panel.or_else(|| file.panel.clone()), "panel")?,
            filter: network_filter(a.filter, a.metric, file),
            start: instant(a.start.or_else(|| file.start.clone()), "start")?,
            end: instant(a.end.or_else(|| file.end.clone()), "end")?,
            top_pairs: positive(a.top_pairs.or(file.top_pairs).unwrap_or(DEFAULT_TOP), "top_pairs")?,
        })
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphSource {
    EdgeList { edges: PathBuf, meta: PathBuf },
    Matrix(PathBuf),
}

#[derive(Debug, Serialize)]
pub struct CentralityConfig {
    pub source: GraphSource,
    pub measures: Vec<Measure>,
    pub top: usize,
}

impl CentralityConfig {
    pub fn resolve(a: CentralityArgs, file: &FileConfig) -> Result<Self> {
        let graph = a.graph.or_else(|| file.graph.clone());
        let matrix = a.matrix.or_else(|| file.matrix.clone());
        let source = match (graph, matrix) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("give either `--graph` or `--matrix`, not both".into()))
            }
            (Some(edges), None) => {
                let meta = a
                    .graph_meta
                    .or_else(|| file.graph_meta.clone())
                    .unwrap_or_else(|| edges.with_file_name("network.json"));
                GraphSource::EdgeList {
                    edges: existing_file(edges)?,
                    meta: existing_file(meta)?,
                }
            }
            (None, Some(m)) => GraphSource::Matrix(existing_file(m)?),
            (None, None) => return Err(CliError::Config("`--graph` or `--matrix` is required".into())),
        };
        Ok(CentralityConfig {
            source,
            measures: measures(a.measures, &file.measures)?,
            top: positive(a.top.or(file.top).unwrap_or(DEFAULT_TOP), "top")?,
        })
    }
}

#[derive(Debug, Serialize)]
pub struct RollConfig {
    pub panel: PathBuf,
    pub spec: WindowSpec,
    pub filter: NetworkFilter,
    pub measures: Vec<Measure>,
    pub percentiles: Vec<PercentilePair>,
    pub normalize: bool,
    pub events: Option<PathBuf>,
}

impl RollConfig {
    pub fn resolve(a: RollArgs, file: &FileConfig) -> Result<Self> {
        let width = match a.width.or_else(|| file.width.clone()) {
            Some(s) => parse_duration(&s)?,
            None => WindowSpec::default().width(),
        };
        let step = match a.step.or_else(|| file.step.clone()) {
            Some(s) => parse_duration(&s)?,
            None => WindowSpec::default().step(),
        };
        let alignment = match a.alignment.or(file.alignment).unwrap_or(AlignmentArg::Calendar) {
            AlignmentArg::Calendar => Alignment::Calendar,
            AlignmentArg::DataRelative => Alignment::DataRelative,
        };
        let spec = WindowSpec::new(width, step, alignment).map_err(|e| CliError::Config(e.to_string()))?;

        let pairs = match (a.percentiles, &file.percentiles) {
            (Some(flags), _) => flags
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| percentile_pair(s))
                .collect::<Result<Vec<_>>>()?,
            (None, Some(list)) => list.clone(),
            (None, None) => PercentilePair::defaults().iter().map(|p| [p.lower, p.upper]).collect(),
        };
        let percentiles = pairs
            .into_iter()
            .map(|[lo, hi]| PercentilePair::new(lo, hi).map_err(|e| CliError::Config(e.to_string())))
            .collect::<Result<Vec<_>>>()?;

        Ok(RollConfig {
            panel: required(a.panel.or_else(|| file.panel.clone()), "panel")?,
            spec,
            filter: network_filter(a.filter, a.metric, file),
            measures: measures(a.measures, &file.measures)?,
            percentiles,
            normalize: a.normalize || file.normalize == Some(true),
            events: a.events.or_else(|| file.events.clone()).map(existing_file).transpose()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn durations() {
        assert_eq!(parse_duration("24h").unwrap(), TimeDelta::hours(24));
        assert_eq!(parse_duration("90").unwrap(), TimeDelta::minutes(90));
        assert_eq!(parse_duration("1d").unwrap(), TimeDelta::days(1));
        assert_eq!(parse_duration("30m").unwrap(), TimeDelta::minutes(30));
        assert!(parse_duration("h").is_err());
        assert!(parse_duration("2w").is_err());
    }

    #[test]
    fn percentile_pairs() {
        assert_eq!(percentile_pair("10:90").unwrap(), [10.0, 90.0]);
        assert!(percentile_pair("10-90").is_err());
    }

    #[test]
    fn toml_and_json_agree() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        let t = dir.join("run.toml");
        let j = dir.join("run.json");
        std::fs::write(&t, "panel = \"p.csv\"\nmeasures = [\"degree\"]\npercentiles = [[5.0, 95.0]]\nfilter = \"mst\"\n").unwrap();
        std::fs::write(&j, r#"{"panel": "p.csv", "measures": ["degree"], "percentiles": [[5.0, 95.0]], "filter": "mst"}"#).unwrap();
        let (a, b) = (FileConfig::load(&t).unwrap(), FileConfig::load(&j).unwrap());
        assert_eq!(a.panel, Some(dir.join("p.csv")));
        assert_eq!(a.panel, b.panel);
        assert_eq!(a.measures, b.measures);
        assert_eq!(a.percentiles, b.percentiles);
        assert_eq!(a.filter, Some(FilterArg::Mst));
        std::fs::write(&t, "bogus = 1\n").unwrap();
        assert!(matches!(FileConfig::load(&t), Err(CliError::Config(_))));
    }

    #[test]
    fn flags_win_over_file() {
        let file = FileConfig {
            filter: Some(FilterArg::Mst),
            metric: Some(MetricArg::InverseWeight),
            ..Default::default()
        };
        assert_eq!(network_filter(None, None, &file), NetworkFilter::Mst(MstMetric::InverseWeight));
        assert_eq!(network_filter(Some(FilterArg::Tmfg), None, &file), NetworkFilter::Tmfg);
        assert_eq!(
            network_filter(None, Some(MetricArg::Mantegna), &file),
            NetworkFilter::Mst(MstMetric::Mantegna)
        );
        assert_eq!(network_filter(None, None, &FileConfig::default()), NetworkFilter::Tmfg);
    }
}

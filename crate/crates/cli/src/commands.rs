use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufReader, Write};
use std::ops::Range;
use std::path::Path;

use chrono::{DateTime, DurationRound, TimeDelta, Utc};
use serde::Serialize;

use infonet::centrality::{compute_centrality, write_centrality_table, write_rankings, CentralitySummary, Measure};
use infonet::corrnet::{
    correlation_matrix, read_labeled_matrix, summary_stats, to_similarity_graph, top_correlations,
    write_correlation_csv, CorrelationMetadata, WeightedGraph,
};
use infonet::filtergraph::{read_filtered_graph, write_edge_list, FilteredGraphMetadata};
use infonet::format_instant;
use infonet::marketdata::{
    apply_filter, build_panel, parse_prices, read_panel_csv, write_panel_csv, PanelMetadata, PriceFormat,
    ReturnPanel, SkipReport,
};
use infonet::rolling::{
    read_events, roll as roll_series, write_bands, write_long_series, write_network_averages, write_wide_series,
    CentralitySeries, Event, NetworkFilter, RollManifest,
};
use infonet::stats::{quantile_sorted, sorted_copy};

use crate::config::{CentralityConfig, Global, GraphSource, IngestConfig, NetConfig, RollConfig};
use crate::error::{CliError, Result};
use crate::staging::Staging;

#[derive(Serialize)]
struct Manifest<'a, C, D> {
    command: &'a str,
    version: &'a str,
    config: &'a C,
    outputs: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    run: Option<D>,
}

fn write_manifest<C: Serialize, D: Serialize>(
    staging: &mut Staging,
    command: &str,
    config: &C,
    run: Option<D>,
) -> Result<()> {
    let outputs = staging.files().to_vec();
    let m = Manifest {
        command,
        version: env!("CARGO_PKG_VERSION"),
        config,
        outputs: &outputs,
        run,
    };
    staging.write_json(&format!("{command}_manifest.json"), &m)
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(CliError::io(path))
}

/// Reads a panel and, when present, the `.json` sidecar next to it.
fn load_panel(path: &Path) -> Result<ReturnPanel> {
    let sidecar = path.with_extension("json");
    let meta: Option<PanelMetadata> = if sidecar.is_file() && sidecar != path {
        let m = serde_json::from_reader(open(&sidecar)?).map_err(|e| CliError::in_file(&sidecar)(e.into()))?;
        Some(m)
    } else {
        None
    };
    read_panel_csv(open(path)?, meta.as_ref()).map_err(CliError::in_file(path))
}

/// Return rows stamped in `(start, end]`.
fn row_range(panel: &ReturnPanel, start: Option<DateTime<Utc>>, end: Option<DateTime<Utc>>) -> Result<Range<usize>> {
    let stamps = panel.return_timestamps();
    let lo = start.map_or(0, |s| stamps.partition_point(|t| *t <= s));
    let hi = end.map_or(stamps.len(), |e| stamps.partition_point(|t| *t <= e));
    if lo >= hi {
        return Err(infonet::Error::InvalidInput("no returns fall between start and end".into()).into());
    }
    Ok(lo..hi)
}

pub fn ingest(cfg: IngestConfig, g: &Global) -> Result<()> {
    let format = PriceFormat {
        delimiter: None,
        timestamp: cfg.timestamp(),
    };
    let mut records = Vec::new();
    let mut report = SkipReport::default();
    for path in &cfg.inputs {
        let parsed = parse_prices(open(path)?, format).map_err(CliError::in_file(path))?;
        log::info!("{}: {} records", path.display(), parsed.records.len());
        report.merge(&parsed.report);
        records.extend(parsed.records);
    }
    let seen: BTreeSet<String> = records.iter().map(|r| r.symbol.clone()).collect();
    let records = apply_filter(records, &cfg.filter);
    let passing: BTreeSet<&str> = records.iter().map(|r| r.symbol.as_str()).collect();
    if records.is_empty() {
        return Err(infonet::Error::InvalidInput(format!(
            "none of {} symbols is quoted in {} and passes the exclusions",
            seen.len(),
            cfg.filter.quote_currency
        ))
        .into());
    }

    let minute = TimeDelta::minutes(1);
    let floor = |t: DateTime<Utc>| t.duration_trunc(minute).expect("minute truncation");
    let start = cfg
        .start
        .unwrap_or_else(|| floor(records.iter().map(|r| r.timestamp).min().expect("non-empty")));
    let end = cfg
        .end
        .unwrap_or_else(|| floor(records.iter().map(|r| r.timestamp).max().expect("non-empty")));
    let built = build_panel(&records, start, end, cfg.panel)?;
    let panel = &built.panel;
    let meta = PanelMetadata::describe(panel, built.coverage.clone(), Some(cfg.panel), Some(report.clone()));

    let mut staging = Staging::new(&g.out)?;
    staging.write("panel.csv", |w| Ok(write_panel_csv(panel, w)?))?;
    staging.write_json("panel.json", &meta)?;
    staging.write("coverage.csv", |w| {
        let mut c = csv::Writer::from_writer(w);
        c.write_record(["symbol", "coverage", "kept"])?;
        for s in &built.coverage {
            c.write_record([s.symbol.as_str(), &s.coverage.to_string(), &s.kept.to_string()])?;
        }
        c.flush()?;
        Ok(())
    })?;
    write_manifest::<_, ()>(&mut staging, "ingest", &cfg, None)?;
    let n_files = staging.files().len();
    staging.commit()?;

    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "read {} rows from {} file(s): {} accepted, {} skipped",
        report.rows_read,
        cfg.inputs.len(),
        report.accepted,
        report.skipped()
    )?;
    if report.skipped() > 0 {
        writeln!(
            out,
            "  missing field {}, bad timestamp {}, bad price {}, non-positive price {}",
            report.missing_field, report.bad_timestamp, report.bad_price, report.non_positive_price
        )?;
        let lines: Vec<String> = report.examples.iter().map(|e| e.line.to_string()).collect();
        writeln!(out, "  first skipped lines: {}", lines.join(", "))?;
    }
    writeln!(
        out,
        "{} of {} symbols pass the filter (quote {})",
        passing.len(),
        seen.len(),
        cfg.filter.quote_currency
    )?;
    writeln!(
        out,
        "grid {} to {}: {} returns",
        format_instant(meta.grid_start),
        format_instant(meta.grid_end),
        panel.n_rows()
    )?;
    let dropped: Vec<String> = built
        .coverage
        .iter()
        .filter(|s| !s.kept)
        .map(|s| format!("{} ({:.3})", s.symbol, s.coverage))
        .collect();
    let cov = sorted_copy(panel.coverage());
    writeln!(
        out,
        "kept {} symbols, coverage min {:.3} median {:.3} max {:.3}",
        panel.n_symbols(),
        cov[0],
        quantile_sorted(&cov, 0.5),
        cov[cov.len() - 1]
    )?;
    if !dropped.is_empty() {
        writeln!(
            out,
            "dropped {} below coverage {}: {}",
            dropped.len(),
            cfg.panel.min_coverage,
            dropped.join(", ")
        )?;
    }
    writeln!(out, "wrote {n_files} files to {}", g.out.display())?;
    Ok(())
}

#[derive(Serialize)]
struct SimilaritySummary {
    n: usize,
    pairs: usize,
    edges: usize,
    total_weight: f64,
    mean_weight: f64,
    min_weight: f64,
    max_weight: f64,
}

impl SimilaritySummary {
    fn describe(g: &WeightedGraph) -> Self {
        let n = g.n();
        let weights: Vec<f64> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).map(|(i, j)| g.weight(i, j)).collect();
        let total: f64 = weights.iter().sum();
        SimilaritySummary {
            n,
            pairs: weights.len(),
            edges: g.edge_count(),
            total_weight: total,
            mean_weight: if weights.is_empty() { 0.0 } else { total / weights.len() as f64 },
            min_weight: weights.iter().copied().fold(f64::INFINITY, f64::min),
            max_weight: weights.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

pub fn net(cfg: NetConfig, g: &Global) -> Result<()> {
    let panel = load_panel(&cfg.panel)?;
    let rows = row_range(&panel, cfg.start, cfg.end)?;
    let corr = correlation_matrix(&panel, rows.clone())?;
    let similarity = to_similarity_graph(&corr);
    let network = cfg.filter.apply(&similarity)?;
    let metric = match cfg.filter {
        NetworkFilter::Mst(m) => Some(m),
        NetworkFilter::Tmfg => None,
    };
    let top = top_correlations(&corr, cfg.top_pairs)?;
    let stats = summary_stats(&panel, panel.symbols(), rows)?;

    let mut staging = Staging::new(&g.out)?;
    staging.write("correlation.csv", |w| Ok(write_correlation_csv(&corr, w)?))?;
    staging.write_json("correlation.json", &CorrelationMetadata::from(&corr))?;
    staging.write_json("similarity.json", &SimilaritySummary::describe(&similarity))?;
    staging.write("network_edges.csv", |w| Ok(write_edge_list(&network, w)?))?;
    staging.write_json("network.json", &FilteredGraphMetadata::describe(&network, metric))?;
    staging.write("top_correlations.csv", |w| {
        let mut c = csv::Writer::from_writer(w);
        c.write_record(["rank", "symbol_a", "symbol_b", "correlation"])?;
        for (k, (a, b, v)) in top.iter().enumerate() {
            c.write_record([&(k + 1).to_string(), a, b, &v.to_string()])?;
        }
        c.flush()?;
        Ok(())
    })?;
    staging.write("summary_stats.csv", |w| {
        let mut c = csv::Writer::from_writer(w);
        c.write_record([
            "symbol", "count", "mean_pct", "std_pct", "min_pct", "q1_pct", "median_pct", "q3_pct", "max_pct",
        ])?;
        for s in stats.iter().map(|s| s.scaled(100.0)) {
            let nums = [s.mean, s.std, s.min, s.q1, s.median, s.q3, s.max].map(|v| v.to_string());
            let mut rec = vec![s.symbol.clone(), s.count.to_string()];
            rec.extend(nums);
            c.write_record(&rec)?;
        }
        c.flush()?;
        Ok(())
    })?;
    write_manifest::<_, ()>(&mut staging, "net", &cfg, None)?;
    staging.commit()?;

    let window = corr.window();
    println!(
        "{} symbols, {} returns from {} to {}",
        corr.n(),
        window.observations,
        format_instant(window.first),
        format_instant(window.last)
    );
    println!(
        "{} kept {} of {} similarity edges, retained weight {:.6}",
        network.kind(),
        network.edges().len(),
        similarity.edge_count(),
        network.retained_weight()
    );
    println!("wrote network to {}", g.out.display());
    Ok(())
}

fn load_graph(source: &GraphSource) -> Result<WeightedGraph> {
    match source {
        GraphSource::EdgeList { edges, meta } => {
            let meta: FilteredGraphMetadata =
                serde_json::from_reader(open(meta)?).map_err(|e| CliError::in_file(meta)(e.into()))?;
            let fg = read_filtered_graph(open(edges)?, &meta).map_err(CliError::in_file(edges))?;
            Ok(fg.graph().clone())
        }
        GraphSource::Matrix(path) => {
            let (labels, mut w) = read_labeled_matrix(open(path)?).map_err(CliError::in_file(path))?;
            for i in 0..w.n() {
                w[(i, i)] = 0.0;
            }
            WeightedGraph::new(labels, w).map_err(CliError::in_file(path))
        }
    }
}

pub fn centrality(cfg: CentralityConfig, g: &Global) -> Result<()> {
    let graph = load_graph(&cfg.source)?;
    let measures: BTreeSet<Measure> = cfg.measures.iter().copied().collect();
    let c = compute_centrality(&graph, &measures)?;
    let summary = CentralitySummary::describe(&c, cfg.top)?;

    let mut staging = Staging::new(&g.out)?;
    staging.write("centrality.csv", |w| Ok(write_centrality_table(&c, w)?))?;
    staging.write_json("centrality.json", &summary)?;
    staging.write("rankings.csv", |w| Ok(write_rankings(&summary, w)?))?;
    write_manifest::<_, ()>(&mut staging, "centrality", &cfg, None)?;
    staging.commit()?;

    println!("{} nodes, {} edges, efficiency {:.6}", graph.n(), graph.edge_count(), c.efficiency);
    for r in &summary.rankings {
        let top: Vec<String> = r.top.iter().take(5).map(|e| format!("{} {:.4}", e.label, e.value)).collect();
        println!("{:<12} average {:.4}; top: {}", r.measure.name(), r.average, top.join(", "));
    }
    Ok(())
}

fn write_events(events: &[Event], w: impl Write) -> Result<()> {
    let mut c = csv::Writer::from_writer(w);
    c.write_record(["timestamp", "label"])?;
    for e in events {
        c.write_record([format_instant(e.timestamp), e.label.clone()])?;
    }
    c.flush()?;
    Ok(())
}

fn write_series_files(staging: &mut Staging, s: &CentralitySeries, suffix: &str) -> Result<()> {
    for m in s.measures() {
        staging.write(&format!("series_{m}{suffix}.csv"), |w| Ok(write_wide_series(s, m, w)?))?;
    }
    staging.write(&format!("bands{suffix}.csv"), |w| Ok(write_bands(s, w)?))
}

pub fn roll(cfg: RollConfig, g: &Global) -> Result<()> {
    let panel = load_panel(&cfg.panel)?;
    let events = match &cfg.events {
        Some(path) => read_events(open(path)?).map_err(CliError::in_file(path))?,
        None => Vec::new(),
    };
    let measures: BTreeSet<Measure> = cfg.measures.iter().copied().collect();
    let series = roll_series(&panel, &cfg.spec, cfg.filter, &measures, &cfg.percentiles)?;
    let normalized = if cfg.normalize {
        let mut n = series.clone();
        for &m in &measures {
            n = n.normalize_by_network_average(m)?;
        }
        Some(n)
    } else {
        None
    };

    let mut staging = Staging::new(&g.out)?;
    staging.write("series_long.csv", |w| Ok(write_long_series(&series, w)?))?;
    write_series_files(&mut staging, &series, "")?;
    staging.write("network_average.csv", |w| Ok(write_network_averages(&series, w)?))?;
    if let Some(n) = &normalized {
        write_series_files(&mut staging, n, "_normalized")?;
    }
    if cfg.events.is_some() {
        staging.write("events.csv", |w| write_events(&events, w))?;
    }
    let run = RollManifest::describe(
        normalized.as_ref().unwrap_or(&series),
        cfg.spec,
        cfg.filter,
        events,
        staging.files().to_vec(),
    );
    write_manifest(&mut staging, "roll", &cfg, Some(&run))?;
    staging.commit()?;

    println!(
        "{} windows of {} min every {} min, ending {} to {}, {} symbols",
        series.len(),
        cfg.spec.width().num_minutes(),
        cfg.spec.step().num_minutes(),
        format_instant(run.first_window_end),
        format_instant(run.last_window_end),
        series.labels().len()
    );
    println!("wrote series to {}", g.out.display());
    Ok(())
}

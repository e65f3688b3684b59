use std::io::{Read, Write};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::{CentralitySeries, NetworkFilter, PercentilePair, WindowSpec};
use crate::centrality::Measure;
use crate::error::{Error, Result};
use crate::format_instant;

/// A labelled instant passed through to plot annotations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub timestamp: DateTime<Utc>,
    pub label: String,
}

/// Reads a `timestamp,label` events file.
pub fn read_events<R: Read>(input: R) -> Result<Vec<Event>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() < 2 {
            return Err(Error::Parse(format!("events line {line}: expected timestamp,label")));
        }
        let timestamp = DateTime::parse_from_rfc3339(&rec[0])
            .map_err(|e| Error::Parse(format!("events line {line}: {e}")))?
            .with_timezone(&Utc);
        out.push(Event {
            timestamp,
            label: rec[1].to_string(),
        });
    }
    Ok(out)
}

/// Describes a rolling run for downstream tools.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RollManifest {
    pub spec: WindowSpec,
    pub filter: NetworkFilter,
    pub measures: Vec<Measure>,
    pub percentiles: Vec<PercentilePair>,
    pub normalized: Vec<Measure>,
    pub windows: usize,
    pub first_window_end: DateTime<Utc>,
    pub last_window_end: DateTime<Utc>,
    pub labels: Vec<String>,
    pub events: Vec<Event>,
    pub files: Vec<String>,
}

impl RollManifest {
    pub fn describe(
        series: &CentralitySeries,
        spec: WindowSpec,
        filter: NetworkFilter,
        events: Vec<Event>,
        files: Vec<String>,
    ) -> Self {
        RollManifest {
            spec,
            filter,
            measures: series.measures().collect(),
            percentiles: series.percentiles().to_vec(),
            normalized: series.normalized_measures().to_vec(),
            windows: series.len(),
            first_window_end: series.window_ends()[0],
            last_window_end: *series.window_ends().last().expect("non-empty series"),
            labels: series.labels().to_vec(),
            events,
            files,
        }
    }
}

/// Long format: `window_end,label,measure,value`.
pub fn write_long_series<W: Write>(series: &CentralitySeries, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["window_end", "label", "measure", "value"])?;
    let measures: Vec<Measure> = series.measures().collect();
    for (k, end) in series.window_ends().iter().enumerate() {
        let stamp = format_instant(*end);
        for (i, label) in series.labels().iter().enumerate() {
            for &m in &measures {
                let v = series.values(m).expect("listed measure")[k][i];
                w.write_record([stamp.as_str(), label, m.name(), &v.to_string()])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Wide format for one measure: `window_end,<label>...,network_average`.
pub fn write_wide_series<W: Write>(series: &CentralitySeries, m: Measure, out: W) -> Result<()> {
    let values = series.values(m).ok_or_else(|| Error::MissingMeasure(m.name().into()))?;
    let avg = series.network_average(m).expect("average alongside values");
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["window_end".to_string()];
    header.extend(series.labels().iter().cloned());
    header.push("network_average".into());
    w.write_record(&header)?;
    for (k, end) in series.window_ends().iter().enumerate() {
        let mut rec = Vec::with_capacity(header.len());
        rec.push(format_instant(*end));
        rec.extend(values[k].iter().map(f64::to_string));
        rec.push(avg[k].to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// `window_end,measure,lower_pct,upper_pct,lower,median,upper`.
pub fn write_bands<W: Write>(series: &CentralitySeries, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["window_end", "measure", "lower_pct", "upper_pct", "lower", "median", "upper"])?;
    let measures: Vec<Measure> = series.measures().collect();
    for (k, end) in series.window_ends().iter().enumerate() {
        let stamp = format_instant(*end);
        for &m in &measures {
            let bands = &series.bands(m).expect("listed measure")[k];
            for (pair, b) in series.percentiles().iter().zip(bands) {
                w.write_record([
                    stamp.clone(),
                    m.name().to_string(),
                    pair.lower.to_string(),
                    pair.upper.to_string(),
                    b.lower.to_string(),
                    b.median.to_string(),
                    b.upper.to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// `window_end,efficiency,<measure>_average...`.
pub fn write_network_averages<W: Write>(series: &CentralitySeries, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let measures: Vec<Measure> = series.measures().collect();
    let mut header = vec!["window_end".to_string(), "efficiency".to_string()];
    header.extend(measures.iter().map(|m| format!("{m}_average")));
    w.write_record(&header)?;
    for (k, end) in series.window_ends().iter().enumerate() {
        let mut rec = vec![format_instant(*end), series.efficiency()[k].to_string()];
        rec.extend(measures.iter().map(|&m| series.network_average(m).expect("listed")[k].to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

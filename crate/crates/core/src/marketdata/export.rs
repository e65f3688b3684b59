use std::io::{Read, Write};

use chrono::{DateTime, TimeDelta, Utc};
use serde::{Deserialize, Serialize};

use super::{PanelConfig, ReturnPanel, SkipReport, SymbolCoverage};
use crate::error::{Error, Result};
use crate::format_instant;

/// JSON sidecar written next to a panel file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelMetadata {
    pub grid_start: DateTime<Utc>,
    pub grid_end: DateTime<Utc>,
    pub rows: usize,
    pub symbols: Vec<String>,
    /// Every symbol seen during resampling, including dropped ones.
    pub coverage: Vec<SymbolCoverage>,
    pub imputed_steps: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<PanelConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skip_report: Option<SkipReport>,
}

impl PanelMetadata {
    pub fn describe(
        panel: &ReturnPanel,
        coverage: Vec<SymbolCoverage>,
        config: Option<PanelConfig>,
        skip_report: Option<SkipReport>,
    ) -> Self {
        let grid = panel.grid();
        PanelMetadata {
            grid_start: grid[0],
            grid_end: grid[grid.len() - 1],
            rows: panel.n_rows(),
            symbols: panel.symbols().to_vec(),
            coverage,
            imputed_steps: (0..panel.n_symbols())
                .map(|i| panel.imputed(i).iter().filter(|&&m| m).count())
                .collect(),
            config,
            skip_report,
        }
    }
}

/// Writes the panel as `timestamp,<symbol>...`, one row per return.
pub fn write_panel_csv<W: Write>(panel: &ReturnPanel, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = Vec::with_capacity(panel.n_symbols() + 1);
    header.push("timestamp".to_string());
    header.extend(panel.symbols().iter().cloned());
    w.write_record(&header)?;
    let mut row = Vec::with_capacity(header.len());
    for (r, ts) in panel.return_timestamps().iter().enumerate() {
        row.clear();
        row.push(format_instant(*ts));
        row.extend(panel.columns().iter().map(|c| c[r].to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a panel written by [`write_panel_csv`].
///
/// With metadata the grid start and coverage are restored exactly; without
/// it the grid is assumed to start one minute before the first return row.
pub fn read_panel_csv<R: Read>(input: R, metadata: Option<&PanelMetadata>) -> Result<ReturnPanel> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = rdr.headers()?.clone();
    if headers.get(0).map(|h| h.eq_ignore_ascii_case("timestamp")) != Some(true) {
        return Err(Error::MissingColumn("timestamp".into()));
    }
    let symbols: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let mut stamps = Vec::new();
    let mut columns = vec![Vec::new(); symbols.len()];
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() != symbols.len() + 1 {
            return Err(Error::Parse(format!("panel line {line}: expected {} fields", symbols.len() + 1)));
        }
        let ts = DateTime::parse_from_rfc3339(&rec[0])
            .map_err(|e| Error::Parse(format!("panel line {line}: bad timestamp: {e}")))?
            .with_timezone(&Utc);
        stamps.push(ts);
        for (col, field) in columns.iter_mut().zip(rec.iter().skip(1)) {
            let v: f64 = field
                .parse()
                .map_err(|_| Error::Parse(format!("panel line {line}: bad value `{field}`")))?;
            col.push(v);
        }
    }
    if stamps.is_empty() {
        return Err(Error::GridTooShort(1));
    }
    let start = match metadata {
        Some(m) => m.grid_start,
        None => stamps[0] - TimeDelta::minutes(1),
    };
    let mut grid = Vec::with_capacity(stamps.len() + 1);
    grid.push(start);
    grid.extend(stamps);

    let imputed = columns.iter().map(|c| vec![false; c.len()]).collect();
    let coverage = symbols
        .iter()
        .map(|s| {
            metadata
                .and_then(|m| m.coverage.iter().find(|c| &c.symbol == s))
                .map_or(1.0, |c| c.coverage)
        })
        .collect();
    ReturnPanel::from_parts(grid, symbols, columns, imputed, coverage)
}

use std::collections::BTreeMap;

use chrono::{DateTime, TimeDelta, Utc};
use serde::{Deserialize, Serialize};

use super::PriceRecord;
use crate::error::{Error, Result};

/// Gap and coverage rules applied while resampling onto the minute grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PanelConfig {
    /// How long a last observed price may be carried forward.
    pub max_gap_minutes: u32,
    /// Symbols with a smaller fraction of observed return steps are dropped.
    pub min_coverage: f64,
}

impl Default for PanelConfig {
    fn default() -> Self {
        PanelConfig {
            max_gap_minutes: 30,
            min_coverage: 0.5,
        }
    }
}

/// Aligned log returns on a regular grid.
///
/// `grid` holds the price instants; return row `r` is the move from
/// `grid[r]` to `grid[r + 1]` and is stamped with `grid[r + 1]`. Returns are
/// stored column-major, one contiguous column per symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnPanel {
    grid: Vec<DateTime<Utc>>,
    symbols: Vec<String>,
    columns: Vec<Vec<f64>>,
    imputed: Vec<Vec<bool>>,
    coverage: Vec<f64>,
}

impl ReturnPanel {
    /// Builds a panel from fully observed return columns.
    pub fn from_columns(
        grid: Vec<DateTime<Utc>>,
        symbols: Vec<String>,
        columns: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let imputed = columns.iter().map(|c| vec![false; c.len()]).collect();
        let coverage = vec![1.0; columns.len()];
        Self::from_parts(grid, symbols, columns, imputed, coverage)
    }

    pub fn from_parts(
        grid: Vec<DateTime<Utc>>,
        symbols: Vec<String>,
        columns: Vec<Vec<f64>>,
        imputed: Vec<Vec<bool>>,
        coverage: Vec<f64>,
    ) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::GridTooShort(grid.len()));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("panel grid must be strictly increasing".into()));
        }
        let rows = grid.len() - 1;
        if symbols.len() != columns.len()
            || imputed.len() != columns.len()
            || coverage.len() != columns.len()
        {
            return Err(Error::InvalidInput("panel symbol and column counts differ".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate symbol `{s}` in panel")));
            }
        }
        for (sym, (col, mask)) in symbols.iter().zip(columns.iter().zip(&imputed)) {
            if col.len() != rows || mask.len() != rows {
                return Err(Error::InvalidInput(format!(
                    "column `{sym}` has {} rows, grid implies {rows}",
                    col.len()
                )));
            }
            if let Some(bad) = col.iter().position(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "column `{sym}` has a non-finite return at row {bad}"
                )));
            }
        }
        Ok(ReturnPanel {
            grid,
            symbols,
            columns,
            imputed,
            coverage,
        })
    }

    pub fn grid(&self) -> &[DateTime<Utc>] {
        &self.grid
    }

    /// Timestamps of the return rows (the grid minus its first instant).
    pub fn return_timestamps(&self) -> &[DateTime<Utc>] {
        &self.grid[1..]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn n_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn n_rows(&self) -> usize {
        self.grid.len() - 1
    }

    pub fn column(&self, i: usize) -> &[f64] {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn imputed(&self, i: usize) -> &[bool] {
        &self.imputed[i]
    }

    pub fn coverage(&self) -> &[f64] {
        &self.coverage
    }

    pub fn symbol_index(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    /// The panel with its columns reordered: new column `k` is old column `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let pick = |i: &usize| *i;
        Self::from_parts(
            self.grid.clone(),
            order.iter().map(pick).map(|i| self.symbols[i].clone()).collect(),
            order.iter().map(pick).map(|i| self.columns[i].clone()).collect(),
            order.iter().map(pick).map(|i| self.imputed[i].clone()).collect(),
            order.iter().map(pick).map(|i| self.coverage[i]).collect(),
        )
    }
}

/// Per-symbol outcome of resampling, kept even for dropped symbols.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolCoverage {
    pub symbol: String,
    pub coverage: f64,
    pub kept: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanelBuild {
    pub panel: ReturnPanel,
    pub coverage: Vec<SymbolCoverage>,
}

/// Minute instants from `start` through `end` inclusive.
pub fn minute_grid(start: DateTime<Utc>, end: DateTime<Utc>) -> Vec<DateTime<Utc>> {
    let step = TimeDelta::minutes(1);
    let mut grid = Vec::new();
    let mut t = start;
    while t <= end {
        grid.push(t);
        t += step;
    }
    grid
}

/// Resamples price records onto a 1-minute grid and differences log prices.
///
/// For each symbol and grid instant the last price observed at or before the
/// instant is used, provided it is at most `max_gap_minutes` old. A return
/// step whose endpoints are not both priced is set to zero and marked
/// imputed; coverage is the share of steps that are not imputed. Symbols
/// appear in lexicographic order.
pub fn build_panel(
    records: &[PriceRecord],
    grid_start: DateTime<Utc>,
    grid_end: DateTime<Utc>,
    config: PanelConfig,
) -> Result<PanelBuild> {
    if grid_start >= grid_end {
        return Err(Error::InvalidInput(format!(
            "grid start {grid_start} is not before grid end {grid_end}"
        )));
    }
    if !(0.0..=1.0).contains(&config.min_coverage) {
        return Err(Error::InvalidInput(format!(
            "min_coverage {} is outside [0, 1]",
            config.min_coverage
        )));
    }
    let grid = minute_grid(grid_start, grid_end);
    if grid.len() < 2 {
        return Err(Error::GridTooShort(grid.len()));
    }
    let steps = grid.len() - 1;
    let max_gap = TimeDelta::minutes(i64::from(config.max_gap_minutes));

    let mut by_symbol: BTreeMap<&str, Vec<(DateTime<Utc>, f64)>> = BTreeMap::new();
    for r in records {
        by_symbol
            .entry(r.symbol.as_str())
            .or_default()
            .push((r.timestamp, r.price));
    }

    let mut symbols = Vec::new();
    let mut columns = Vec::new();
    let mut masks = Vec::new();
    let mut kept_coverage = Vec::new();
    let mut report = Vec::with_capacity(by_symbol.len());

    for (symbol, mut obs) in by_symbol {
        // Stable: among equal timestamps the later input row wins.
        obs.sort_by_key(|(t, _)| *t);
        let prices = sample_last_tick(&obs, &grid, max_gap);

        let mut column = Vec::with_capacity(steps);
        let mut mask = Vec::with_capacity(steps);
        let mut observed = 0usize;
        for w in prices.windows(2) {
            match (w[0], w[1]) {
                (Some(p0), Some(p1)) => {
                    column.push((p1 / p0).ln());
                    mask.push(false);
                    observed += 1;
                }
                _ => {
                    column.push(0.0);
                    mask.push(true);
                }
            }
        }
        let coverage = observed as f64 / steps as f64;
        let kept = coverage >= config.min_coverage;
        report.push(SymbolCoverage {
            symbol: symbol.to_string(),
            coverage,
            kept,
        });
        if kept {
            symbols.push(symbol.to_string());
            columns.push(column);
            masks.push(mask);
            kept_coverage.push(coverage);
        }
    }

    if symbols.is_empty() {
        let detail = if report.is_empty() {
            "no records".to_string()
        } else {
            report
                .iter()
                .map(|c| format!("{}={:.4}", c.symbol, c.coverage))
                .collect::<Vec<_>>()
                .join(", ")
        };
        return Err(Error::AllSymbolsDropped {
            min_coverage: config.min_coverage,
            report: detail,
        });
    }

    let panel = ReturnPanel::from_parts(grid, symbols, columns, masks, kept_coverage)?;
    Ok(PanelBuild {
        panel,
        coverage: report,
    })
}

/// Last observation at or before each grid instant, if fresh enough.
fn sample_last_tick(
    obs: &[(DateTime<Utc>, f64)],
    grid: &[DateTime<Utc>],
    max_gap: TimeDelta,
) -> Vec<Option<f64>> {
    let mut out = Vec::with_capacity(grid.len());
    let mut next = 0usize;
    let mut last: Option<(DateTime<Utc>, f64)> = None;
    for &g in grid {
        while next < obs.len() && obs[next].0 <= g {
            last = Some(obs[next]);
            next += 1;
        }
        out.push(match last {
            Some((t, p)) if g - t <= max_gap => Some(p),
            _ => None,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use chrono::TimeZone;

    use super::*;

    fn t0() -> DateTime<Utc> {
        Utc.with_ymd_and_hms(2022, 11, 1, 0, 0, 0).unwrap()
    }

    fn at(minutes: i64, symbol: &str, price: f64) -> PriceRecord {
        PriceRecord {
            symbol: symbol.into(),
            timestamp: t0() + TimeDelta::minutes(minutes),
            price,
        }
    }

    #[test]
    fn single_log_return() {
        let recs = [at(0, "A", 100.0), at(1, "A", 100.0 * 0.01f64.exp())];
        let b = build_panel(&recs, t0(), t0() + TimeDelta::minutes(1), PanelConfig::default())
            .unwrap();
        assert_eq!(b.panel.n_rows(), 1);
        assert!((b.panel.column(0)[0] - 0.01).abs() < 1e-15);
    }

    #[test]
    fn constant_prices_give_zero_returns() {
        let recs: Vec<_> = (0..=10).map(|m| at(m, "A", 42.0)).collect();
        let b = build_panel(&recs, t0(), t0() + TimeDelta::minutes(10), PanelConfig::default())
            .unwrap();
        assert_eq!(b.panel.n_rows(), 10);
        assert!(b.panel.column(0).iter().all(|&r| r == 0.0));
        assert_eq!(b.panel.coverage()[0], 1.0);
    }

    #[test]
    fn half_observed_symbol_is_dropped() {
        let mut recs: Vec<_> = (0..=100).map(|m| at(m, "FULL", 1.0 + m as f64)).collect();
        // Observed only on the first half of the grid.
        recs.extend((0..=50).map(|m| at(m, "HALF", 2.0)));
        let cfg = PanelConfig {
            max_gap_minutes: 0,
            min_coverage: 0.8,
        };
        let b = build_panel(&recs, t0(), t0() + TimeDelta::minutes(100), cfg).unwrap();
        assert_eq!(b.panel.symbols(), ["FULL"]);
        let half = b.coverage.iter().find(|c| c.symbol == "HALF").unwrap();
        assert!(!half.kept);
        assert!((half.coverage - 0.5).abs() < 1e-12);
    }

    #[test]
    fn forward_fill_respects_gap_limit() {
        let recs = [at(0, "A", 1.0), at(5, "A", 2.0)];
        let cfg = PanelConfig {
            max_gap_minutes: 2,
            min_coverage: 0.0,
        };
        let b = build_panel(&recs, t0(), t0() + TimeDelta::minutes(5), cfg).unwrap();
        let p = &b.panel;
        // Prices: 1,1,1,-,-,2 -> steps 0,1 observed; 2,3,4 imputed.
        assert_eq!(p.imputed(0), [false, false, true, true, true]);
        assert_eq!(p.column(0), [0.0; 5]);
        assert!((p.coverage()[0] - 0.4).abs() < 1e-12);
    }

    #[test]
    fn sub_minute_ticks_snap_to_last_at_or_before() {
        let recs = [
            PriceRecord {
                symbol: "A".into(),
                timestamp: t0() + TimeDelta::seconds(30),
                price: 1.0,
            },
            PriceRecord {
                symbol: "A".into(),
                timestamp: t0() + TimeDelta::seconds(59),
                price: 2.0,
            },
            PriceRecord {
                symbol: "A".into(),
                timestamp: t0() + TimeDelta::seconds(61),
                price: 8.0,
            },
            at(2, "A", 4.0),
        ];
        let cfg = PanelConfig {
            max_gap_minutes: 5,
            min_coverage: 0.0,
        };
        let b = build_panel(&recs, t0(), t0() + TimeDelta::minutes(2), cfg).unwrap();
        // Grid prices: none at 0:00, 2.0 at 0:01, 4.0 at 0:02.
        assert_eq!(b.panel.imputed(0), [true, false]);
        assert!((b.panel.column(0)[1] - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_grids() {
        let recs = [at(0, "A", 1.0)];
        assert!(matches!(
            build_panel(&recs, t0(), t0() + TimeDelta::seconds(30), PanelConfig::default()),
            Err(Error::GridTooShort(1))
        ));
        assert!(matches!(
            build_panel(&recs, t0(), t0(), PanelConfig::default()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn all_dropped_reports_coverage() {
        let recs = [at(0, "A", 1.0)];
        let cfg = PanelConfig {
            max_gap_minutes: 0,
            min_coverage: 0.5,
        };
        let err = build_panel(&recs, t0(), t0() + TimeDelta::minutes(10), cfg).unwrap_err();
        match err {
            Error::AllSymbolsDropped { report, .. } => assert!(report.contains("A=0.0000")),
            other => panic!("unexpected {other}"),
        }
    }
}

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::marketdata::ReturnPanel;
use crate::stats::{mean, quantile_sorted, sample_std, sorted_copy};

/// Descriptive statistics of one return column. Values are in the panel's
/// units (log-return fractions); scale by 100 for percentages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub symbol: String,
    pub count: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl SummaryStats {
    pub fn scaled(&self, factor: f64) -> SummaryStats {
        SummaryStats {
            symbol: self.symbol.clone(),
            count: self.count,
            mean: self.mean * factor,
            std: self.std * factor.abs(),
            min: self.min * factor,
            q1: self.q1 * factor,
            median: self.median * factor,
            q3: self.q3 * factor,
            max: self.max * factor,
        }
    }
}

/// Per-symbol mean, sample standard deviation and five-number summary over
/// `rows`. Quartiles interpolate linearly between closest ranks.
pub fn summary_stats<S: AsRef<str>>(
    panel: &ReturnPanel,
    symbols: &[S],
    rows: Range<usize>,
) -> Result<Vec<SummaryStats>> {
    if symbols.is_empty() {
        return Err(Error::InvalidInput("no symbols selected".into()));
    }
    if rows.is_empty() || rows.end > panel.n_rows() {
        return Err(Error::InvalidInput(format!(
            "row range {rows:?} is empty or outside panel of {} rows",
            panel.n_rows()
        )));
    }
    symbols
        .iter()
        .map(|s| {
            let s = s.as_ref();
            let i = panel
                .symbol_index(s)
                .ok_or_else(|| Error::UnknownSymbol(s.to_string()))?;
            let xs = &panel.column(i)[rows.clone()];
            let sorted = sorted_copy(xs);
            Ok(SummaryStats {
                symbol: s.to_string(),
                count: xs.len(),
                mean: mean(xs),
                std: sample_std(xs),
                min: sorted[0],
                q1: quantile_sorted(&sorted, 0.25),
                median: quantile_sorted(&sorted, 0.5),
                q3: quantile_sorted(&sorted, 0.75),
                max: sorted[sorted.len() - 1],
            })
        })
        .collect()
}

//! Price ingestion: parsing, symbol selection and resampling to log-return panels.

mod export;
mod filter;
mod panel;
mod parse;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

pub use export::{read_panel_csv, write_panel_csv, PanelMetadata};
pub use filter::{apply_filter, SymbolFilter, DEFAULT_EXCLUDED_SUBSTRINGS, DEFAULT_FIAT_DENYLIST};
pub use panel::{build_panel, minute_grid, PanelBuild, PanelConfig, ReturnPanel, SymbolCoverage};
pub use parse::{
    parse_prices, ParsedPrices, PriceFormat, SkipReason, SkipReport, SkippedRow, TimestampFormat,
};

/// One trade print. `price` is strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceRecord {
    pub symbol: String,
    pub timestamp: DateTime<Utc>,
    pub price: f64,
}

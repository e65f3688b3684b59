use serde::{Deserialize, Serialize};

use super::PriceRecord;

/// Token-name fragments that mark leveraged, partial-exposure and hedge tokens.
pub const DEFAULT_EXCLUDED_SUBSTRINGS: [&str; 4] = ["BEAR", "BULL", "HALF", "HEDGE"];

/// Fiat currencies dropped by default when they appear as the base asset.
pub const DEFAULT_FIAT_DENYLIST: [&str; 17] = [
    "AUD", "BRL", "CAD", "CHF", "CNH", "EUR", "GBP", "HKD", "JPY", "MXN", "NZD", "RUB", "SGD",
    "TRY", "UAH", "USD", "ZAR",
];

const PAIR_SEPARATORS: [char; 3] = ['-', '/', '_'];

/// Symbol selection rules for a trading venue.
///
/// A symbol passes iff its quote currency equals `quote_currency`, its base
/// asset contains none of `exclude_substrings`, and neither the full symbol
/// nor its base asset is listed in `exclude_symbols`. All comparisons are
/// ASCII case-insensitive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolFilter {
    pub exclude_substrings: Vec<String>,
    pub quote_currency: String,
    pub exclude_symbols: Vec<String>,
}

impl Default for SymbolFilter {
    fn default() -> Self {
        Self::for_quote("USD")
    }
}

impl SymbolFilter {
    /// Default exclusions with the given quote currency.
    pub fn for_quote(quote: &str) -> Self {
        SymbolFilter {
            exclude_substrings: DEFAULT_EXCLUDED_SUBSTRINGS.iter().map(|s| s.to_string()).collect(),
            quote_currency: quote.to_string(),
            exclude_symbols: DEFAULT_FIAT_DENYLIST.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Only the quote-currency rule, no exclusions.
    pub fn quote_only(quote: &str) -> Self {
        SymbolFilter {
            exclude_substrings: Vec::new(),
            quote_currency: quote.to_string(),
            exclude_symbols: Vec::new(),
        }
    }

    /// Splits `symbol` into `(base, quote)` under this filter's quote currency.
    /// Returns `None` when the symbol is not quoted in it.
    fn base_asset<'a>(&self, symbol: &'a str) -> Option<&'a str> {
        let quote = self.quote_currency.as_str();
        if let Some(pos) = symbol.rfind(PAIR_SEPARATORS) {
            let (base, rest) = symbol.split_at(pos);
            let q = &rest[1..];
            return (!base.is_empty() && q.eq_ignore_ascii_case(quote)).then_some(base);
        }
        if symbol.len() <= quote.len() {
            return None;
        }
        let split = symbol.len() - quote.len();
        if !symbol.is_char_boundary(split) {
            return None;
        }
        let (base, q) = symbol.split_at(split);
        q.eq_ignore_ascii_case(quote).then_some(base)
    }

    pub fn passes(&self, symbol: &str) -> bool {
        let Some(base) = self.base_asset(symbol) else {
            return false;
        };
        let base_upper = base.to_ascii_uppercase();
        if self
            .exclude_substrings
            .iter()
            .any(|frag| !frag.is_empty() && base_upper.contains(&frag.to_ascii_uppercase()))
        {
            return false;
        }
        !self
            .exclude_symbols
            .iter()
            .any(|d| d.eq_ignore_ascii_case(symbol) || d.eq_ignore_ascii_case(base))
    }
}

/// Keeps the records whose symbol passes `filter`, preserving order.
pub fn apply_filter(records: Vec<PriceRecord>, filter: &SymbolFilter) -> Vec<PriceRecord> {
    records.into_iter().filter(|r| filter.passes(&r.symbol)).collect()
}

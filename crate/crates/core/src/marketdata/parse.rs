use std::io::{BufRead, BufReader, Cursor, Read};

use chrono::{DateTime, TimeZone, Utc};
use serde::{Deserialize, Serialize};

use super::PriceRecord;
use crate::error::{Error, Result};

const MAX_SKIP_EXAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimestampFormat {
    /// Decide from the first data row; every later row must use the same form.
    #[default]
    Auto,
    Rfc3339,
    EpochMillis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PriceFormat {
    /// Field delimiter. `None` sniffs comma vs tab from the header line.
    pub delimiter: Option<u8>,
    pub timestamp: TimestampFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    MissingField,
    BadTimestamp,
    BadPrice,
    NonPositivePrice,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedRow {
    /// 1-based line number in the source, header included.
    pub line: u64,
    pub reason: SkipReason,
}

/// Tally of data rows that did not become records.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SkipReport {
    pub rows_read: u64,
    pub accepted: u64,
    pub missing_field: u64,
    pub bad_timestamp: u64,
    pub bad_price: u64,
    pub non_positive_price: u64,
    /// The first few skipped rows, for diagnostics.
    pub examples: Vec<SkippedRow>,
}

impl SkipReport {
    pub fn skipped(&self) -> u64 {
        self.missing_field + self.bad_timestamp + self.bad_price + self.non_positive_price
    }

    fn skip(&mut self, line: u64, reason: SkipReason) {
        match reason {
            SkipReason::MissingField => self.missing_field += 1,
            SkipReason::BadTimestamp => self.bad_timestamp += 1,
            SkipReason::BadPrice => self.bad_price += 1,
            SkipReason::NonPositivePrice => self.non_positive_price += 1,
        }
        if self.examples.len() < MAX_SKIP_EXAMPLES {
            self.examples.push(SkippedRow { line, reason });
        }
    }

    /// Folds another report into this one (several input files).
    pub fn merge(&mut self, other: &SkipReport) {
        self.rows_read += other.rows_read;
        self.accepted += other.accepted;
        self.missing_field += other.missing_field;
        self.bad_timestamp += other.bad_timestamp;
        self.bad_price += other.bad_price;
        self.non_positive_price += other.non_positive_price;
        for ex in &other.examples {
            if self.examples.len() >= MAX_SKIP_EXAMPLES {
                break;
            }
            self.examples.push(ex.clone());
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ParsedPrices {
    pub records: Vec<PriceRecord>,
    pub report: SkipReport,
}

fn parse_epoch_millis(s: &str) -> Option<DateTime<Utc>> {
    let ms: i64 = s.parse().ok()?;
    Utc.timestamp_millis_opt(ms).single()
}

fn parse_rfc3339(s: &str) -> Option<DateTime<Utc>> {
    DateTime::parse_from_rfc3339(s).ok().map(|t| t.with_timezone(&Utc))
}

fn looks_like_epoch(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn sniff_delimiter(header: &str) -> u8 {
    if header.contains('\t') && !header.contains(',') {
        b'\t'
    } else {
        b','
    }
}

/// Reads `symbol,timestamp,price` records from a delimited text stream.
///
/// Column order is free and header names are matched case-insensitively.
/// Rows that cannot produce a valid [`PriceRecord`] are tallied in the
/// returned [`SkipReport`]; only a malformed header is fatal.
pub fn parse_prices<R: Read>(source: R, format: PriceFormat) -> Result<ParsedPrices> {
    let mut reader = BufReader::new(source);
    let mut header = String::new();
    reader.read_line(&mut header)?;
    let header_line = header.trim_start_matches('\u{feff}');
    if header_line.trim().is_empty() {
        return Err(Error::MissingColumn("symbol".into()));
    }
    let delimiter = format.delimiter.unwrap_or_else(|| sniff_delimiter(header_line));

    let mut csv = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .flexible(true)
        .trim(csv::Trim::All)
        .has_headers(true)
        .from_reader(Cursor::new(header_line.as_bytes().to_vec()).chain(reader));

    let headers = csv.headers()?.clone();
    let column = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let sym_col = column("symbol")?;
    let ts_col = column("timestamp")?;
    let px_col = column("price")?;

    let mut ts_format = format.timestamp;
    let mut out = ParsedPrices::default();
    let mut row = csv::StringRecord::new();

    while csv.read_record(&mut row)? {
        out.report.rows_read += 1;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let (Some(symbol), Some(ts), Some(px)) = (row.get(sym_col), row.get(ts_col), row.get(px_col))
        else {
            out.report.skip(line, SkipReason::MissingField);
            continue;
        };
        if symbol.is_empty() {
            out.report.skip(line, SkipReason::MissingField);
            continue;
        }
        if ts_format == TimestampFormat::Auto {
            ts_format = if looks_like_epoch(ts) {
                TimestampFormat::EpochMillis
            } else {
                TimestampFormat::Rfc3339
            };
        }
        let timestamp = match ts_format {
            TimestampFormat::EpochMillis => parse_epoch_millis(ts),
            _ => parse_rfc3339(ts),
        };
        let Some(timestamp) = timestamp else {
            out.report.skip(line, SkipReason::BadTimestamp);
            continue;
        };
        let price: f64 = match px.parse() {
            Ok(p) if f64::is_finite(p) => p,
            _ => {
                out.report.skip(line, SkipReason::BadPrice);
                continue;
            }
        };
        if price <= 0.0 {
            out.report.skip(line, SkipReason::NonPositivePrice);
            continue;
        }
        out.report.accepted += 1;
        out.records.push(PriceRecord {
            symbol: symbol.to_string(),
            timestamp,
            price,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ParsedPrices> {
        parse_prices(text.as_bytes(), PriceFormat::default())
    }

    #[test]
    fn three_valid_rows() {
        let p = parse(
            "symbol,timestamp,price\n\
             BTC-USD,2022-11-01T00:00:00Z,20000.5\n\
             BTC-USD,2022-11-01T00:01:00Z,20001\n\
             ETH-USD,2022-11-01T00:00:30.250Z,1500\n",
        )
        .unwrap();
        assert_eq!(p.records.len(), 3);
        assert_eq!(p.report.skipped(), 0);
        assert_eq!(p.records[2].symbol, "ETH-USD");
        assert_eq!(p.records[2].timestamp.timestamp_subsec_millis(), 250);
    }

    #[test]
    fn zero_price_is_skipped() {
        let p = parse("symbol,timestamp,price\nBTC-USD,2022-11-01T00:00:00Z,0\n").unwrap();
        assert!(p.records.is_empty());
        assert_eq!(p.report.skipped(), 1);
        assert_eq!(p.report.non_positive_price, 1);
        assert_eq!(p.report.examples[0].line, 2);
    }

    #[test]
    fn bad_rows_are_reported_not_fatal() {
        let p = parse(
            "price,symbol,timestamp\n\
             abc,BTC-USD,2022-11-01T00:00:00Z\n\
             1.0,BTC-USD,not-a-time\n\
             -3,BTC-USD,2022-11-01T00:00:00Z\n\
             1.0,BTC-USD\n\
             NaN,BTC-USD,2022-11-01T00:00:00Z\n\
             2.0,BTC-USD,2022-11-01T00:02:00+01:00\n",
        )
        .unwrap();
        assert_eq!(p.records.len(), 1);
        assert_eq!(p.report.bad_price, 2);
        assert_eq!(p.report.bad_timestamp, 1);
        assert_eq!(p.report.non_positive_price, 1);
        assert_eq!(p.report.missing_field, 1);
        assert_eq!(p.records[0].timestamp.to_rfc3339(), "2022-10-31T23:02:00+00:00");
    }

    #[test]
    fn missing_column_is_fatal_and_named() {
        let err = parse("symbol,time,price\nA,1,2\n").unwrap_err();
        assert!(matches!(err, Error::MissingColumn(ref c) if c == "timestamp"), "{err}");
    }

    #[test]
    fn tab_delimited_epoch_millis() {
        let p = parse("symbol\ttimestamp\tprice\nBTCUSDT\t1667260800000\t20000\n").unwrap();
        assert_eq!(p.records.len(), 1);
        assert_eq!(p.records[0].timestamp.to_rfc3339(), "2022-11-01T00:00:00+00:00");
    }

    #[test]
    fn timestamp_form_is_uniform_within_a_file() {
        let p = parse(
            "symbol,timestamp,price\n\
             A,1667260800000,1\n\
             A,2022-11-01T00:01:00Z,1\n",
        )
        .unwrap();
        assert_eq!(p.records.len(), 1);
        assert_eq!(p.report.bad_timestamp, 1);
    }
}

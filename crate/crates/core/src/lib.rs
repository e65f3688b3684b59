//! Correlation-based asset networks and their centrality.
//!
//! Minute price prints are turned into a log-return panel ([`marketdata`]),
//! summarized as a Pearson correlation similarity graph ([`corrnet`]),
//! filtered to a planar (TMFG) or tree (MST) skeleton ([`filtergraph`]) and
//! scored with degree, closeness and information centrality
//! ([`centrality`]). [`rolling`] repeats the pipeline over sliding windows.

pub mod centrality;
pub mod corrnet;
mod error;
pub mod filtergraph;
pub mod marketdata;
pub mod matrix;
mod par;
pub mod rolling;
pub mod stats;
pub mod synthetic;
pub mod toy;

use chrono::{DateTime, SecondsFormat, Utc};

pub use error::{Error, Result};

/// ISO-8601 UTC with a `Z` suffix, e.g. `2022-11-02T00:00:00Z`.
pub fn format_instant(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::AutoSi, true)
}

/// Whether the crate was built with the rayon backend.
pub fn is_parallel() -> bool {
    par::is_parallel()
}

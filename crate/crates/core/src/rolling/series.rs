use std::collections::BTreeMap;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::centrality::Measure;
use crate::error::{Error, Result};
use crate::format_instant;
use crate::stats::{quantile_sorted, sorted_copy};

/// A lower/upper percentile pair, in percent (`10.0, 90.0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PercentilePair {
    pub lower: f64,
    pub upper: f64,
}

impl PercentilePair {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(0.0..=100.0).contains(&lower) || !(0.0..=100.0).contains(&upper) || lower > upper {
            return Err(Error::InvalidInput(format!(
                "percentile pair ({lower}, {upper}) must satisfy 0 <= lower <= upper <= 100"
            )));
        }
        Ok(PercentilePair { lower, upper })
    }

    pub fn defaults() -> Vec<PercentilePair> {
        vec![
            PercentilePair {
                lower: 10.0,
                upper: 90.0,
            },
            PercentilePair {
                lower: 25.0,
                upper: 75.0,
            },
        ]
    }
}

/// Cross-sectional spread of one measure in one window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lower: f64,
    pub median: f64,
    pub upper: f64,
}

pub(crate) fn bands_for(values: &[f64], pairs: &[PercentilePair]) -> Vec<Band> {
    let sorted = sorted_copy(values);
    let median = quantile_sorted(&sorted, 0.5);
    pairs
        .iter()
        .map(|p| Band {
            lower: quantile_sorted(&sorted, p.lower / 100.0),
            median,
            upper: quantile_sorted(&sorted, p.upper / 100.0),
        })
        .collect()
}

/// Per-window node centralities with network averages and percentile bands.
///
/// Every per-measure vector is indexed `[window][node]` and shares
/// `window_ends`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralitySeries {
    pub(crate) window_ends: Vec<DateTime<Utc>>,
    pub(crate) labels: Vec<String>,
    pub(crate) values: BTreeMap<Measure, Vec<Vec<f64>>>,
    pub(crate) network_average: BTreeMap<Measure, Vec<f64>>,
    pub(crate) efficiency: Vec<f64>,
    pub(crate) percentiles: Vec<PercentilePair>,
    pub(crate) bands: BTreeMap<Measure, Vec<Vec<Band>>>,
    pub(crate) normalized: Vec<Measure>,
}

impl CentralitySeries {
    pub fn window_ends(&self) -> &[DateTime<Utc>] {
        &self.window_ends
    }

    pub fn len(&self) -> usize {
        self.window_ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window_ends.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn measures(&self) -> impl Iterator<Item = Measure> + '_ {
        self.values.keys().copied()
    }

    /// `[window][node]` values of a measure.
    pub fn values(&self, m: Measure) -> Option<&[Vec<f64>]> {
        self.values.get(&m).map(Vec::as_slice)
    }

    /// One node's series for a measure.
    pub fn node_series(&self, m: Measure, label: &str) -> Option<Vec<f64>> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(self.values.get(&m)?.iter().map(|row| row[i]).collect())
    }

    pub fn network_average(&self, m: Measure) -> Option<&[f64]> {
        self.network_average.get(&m).map(Vec::as_slice)
    }

    /// Global efficiency of each window's filtered network.
    pub fn efficiency(&self) -> &[f64] {
        &self.efficiency
    }

    pub fn percentiles(&self) -> &[PercentilePair] {
        &self.percentiles
    }

    /// `[window][pair]` bands of a measure.
    pub fn bands(&self, m: Measure) -> Option<&[Vec<Band>]> {
        self.bands.get(&m).map(Vec::as_slice)
    }

    /// Measures already divided by their network average.
    pub fn normalized_measures(&self) -> &[Measure] {
        &self.normalized
    }

    /// Divides each node's series of `m` by the network-average series, so
    /// the normalized network average is 1 at every window. Bands are
    /// recomputed on the normalized values.
    pub fn normalize_by_network_average(&self, m: Measure) -> Result<CentralitySeries> {
        let avg = self
            .network_average
            .get(&m)
            .ok_or_else(|| Error::MissingMeasure(m.name().into()))?;
        if let Some(w) = avg.iter().position(|&a| a.is_nan() || a <= 0.0) {
            return Err(Error::ZeroNetworkAverage {
                measure: m.name().into(),
                window: format_instant(self.window_ends[w]),
            });
        }
        let normalized: Vec<Vec<f64>> = self.values[&m]
            .iter()
            .zip(avg)
            .map(|(row, &a)| row.iter().map(|v| v / a).collect())
            .collect();
        let mut out = self.clone();
        out.bands.insert(
            m,
            normalized.iter().map(|row| bands_for(row, &self.percentiles)).collect(),
        );
        out.network_average.insert(m, vec![1.0; avg.len()]);
        out.values.insert(m, normalized);
        if !out.normalized.contains(&m) {
            out.normalized.push(m);
            out.normalized.sort();
        }
        Ok(out)
    }

    /// Per-window average information centrality `c_I(G)`.
    pub fn average_information_series(&self) -> Result<Vec<(DateTime<Utc>, f64)>> {
        let avg = self
            .network_average
            .get(&Measure::Information)
            .ok_or_else(|| Error::MissingMeasure(Measure::Information.name().into()))?;
        Ok(self.window_ends.iter().copied().zip(avg.iter().copied()).collect())
    }
}

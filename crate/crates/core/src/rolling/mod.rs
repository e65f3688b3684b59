//! Rolling-window network analysis.
//!
//! Each window runs the same static pipeline (correlation, similarity graph,
//! filter, centrality) on its slice of the panel. Windows are independent and
//! are evaluated in parallel; results are assembled in window order.

mod export;
mod series;
mod window;

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::centrality::{compute_centrality, Measure, NetworkCentrality};
use crate::corrnet::{correlation_matrix, to_similarity_graph, CorrelationMatrix};
use crate::error::{Error, Result};
use crate::filtergraph::{mst, tmfg, FilterKind, FilteredGraph, MstMetric};
use crate::marketdata::ReturnPanel;
use crate::par;
pub use export::{
    read_events, write_bands, write_long_series, write_network_averages, write_wide_series, Event,
    RollManifest,
};
pub use series::{Band, CentralitySeries, PercentilePair};
pub use window::{window_positions, Alignment, Window, WindowSpec};

/// Which filtered network each window is reduced to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "metric")]
pub enum NetworkFilter {
    Tmfg,
    Mst(MstMetric),
}

impl NetworkFilter {
    pub fn kind(self) -> FilterKind {
        match self {
            NetworkFilter::Tmfg => FilterKind::Tmfg,
            NetworkFilter::Mst(_) => FilterKind::Mst,
        }
    }

    pub fn apply(self, dense: &crate::corrnet::WeightedGraph) -> Result<FilteredGraph> {
        match self {
            NetworkFilter::Tmfg => tmfg(dense),
            NetworkFilter::Mst(metric) => mst(dense, metric),
        }
    }
}

/// Everything the static pipeline produces for one slice of returns.
#[derive(Debug, Clone)]
pub struct WindowNetwork {
    pub correlation: CorrelationMatrix,
    pub network: FilteredGraph,
    pub centrality: NetworkCentrality,
}

/// Correlation, similarity graph, filter and centralities over `rows`.
pub fn static_pipeline(
    panel: &ReturnPanel,
    rows: Range<usize>,
    filter: NetworkFilter,
    measures: &BTreeSet<Measure>,
) -> Result<WindowNetwork> {
    if measures.is_empty() {
        return Err(Error::EmptyMeasures);
    }
    let correlation = correlation_matrix(panel, rows)?;
    let network = filter.apply(&to_similarity_graph(&correlation))?;
    let centrality = compute_centrality(network.graph(), measures)?;
    Ok(WindowNetwork {
        correlation,
        network,
        centrality,
    })
}

/// Runs the static pipeline on every window position of `spec`.
pub fn roll(
    panel: &ReturnPanel,
    spec: &WindowSpec,
    filter: NetworkFilter,
    measures: &BTreeSet<Measure>,
    percentiles: &[PercentilePair],
) -> Result<CentralitySeries> {
    if measures.is_empty() {
        return Err(Error::EmptyMeasures);
    }
    let windows = window_positions(panel, spec)?;
    let results: Vec<NetworkCentrality> = par::try_map_indices(windows.len(), |w| {
        static_pipeline(panel, windows[w].rows.clone(), filter, measures).map(|net| net.centrality)
    })?;

    let mut values: BTreeMap<Measure, Vec<Vec<f64>>> = BTreeMap::new();
    let mut network_average: BTreeMap<Measure, Vec<f64>> = BTreeMap::new();
    let mut bands: BTreeMap<Measure, Vec<Vec<Band>>> = BTreeMap::new();
    for &m in measures {
        let per_window: Vec<Vec<f64>> = results
            .iter()
            .map(|c| c.values(m).expect("requested measure computed").to_vec())
            .collect();
        network_average.insert(m, results.iter().map(|c| c.average(m).expect("computed")).collect());
        bands.insert(
            m,
            per_window.iter().map(|row| series::bands_for(row, percentiles)).collect(),
        );
        values.insert(m, per_window);
    }

    Ok(CentralitySeries {
        window_ends: windows.iter().map(|w| w.end).collect(),
        labels: panel.symbols().to_vec(),
        values,
        network_average,
        efficiency: results.iter().map(|c| c.efficiency).collect(),
        percentiles: percentiles.to_vec(),
        bands,
        normalized: Vec::new(),
    })
}

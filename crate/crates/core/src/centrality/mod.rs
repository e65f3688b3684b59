//! Path-based centrality on weighted graphs: degree, weighted closeness,
//! global efficiency and information centrality (efficiency loss under node
//! deactivation).
//!
//! Every edge costs `1 / w` to traverse. A deactivated node keeps its place in
//! the vertex set but loses all incident edges.

mod export;
mod measures;
mod paths;

pub use export::{write_centrality_table, write_rankings, CentralitySummary, MeasureRanking, RankedEntry};
pub use measures::{
    average_information_centrality, closeness_centrality, compute_centrality, deactivation_efficiencies,
    degree_centrality, efficiency, information_centrality, ranking, CentralityRecord, Measure,
    NetworkCentrality,
};
pub use paths::{shortest_paths, DistanceMatrix};

//! Pearson correlation matrices and the similarity graphs derived from them.

mod correlation;
mod export;
mod graph;
mod summary;

pub use correlation::{
    correlation_matrix, to_similarity_graph, top_correlations, CorrelationMatrix, CorrelationWindow,
};
pub use export::{read_labeled_matrix, write_correlation_csv, write_labeled_matrix, CorrelationMetadata};
pub use graph::WeightedGraph;
pub use summary::{summary_stats, SummaryStats};

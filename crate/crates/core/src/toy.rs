//! The five-node weighted network used throughout the docs and tests.
//!
//! ```text
//!        a   b   c   d   e
//!   a  0.0 0.5 0.2 0.3 0.4
//!   b  0.5 0.0 0.1 0.2 0.0
//!   c  0.2 0.1 0.0 0.0 0.0
//!   d  0.3 0.2 0.0 0.0 0.0
//!   e  0.4 0.0 0.0 0.0 0.0
//! ```

use crate::corrnet::WeightedGraph;
use crate::matrix::SquareMatrix;

pub const TOY_LABELS: [&str; 5] = ["a", "b", "c", "d", "e"];

pub const TOY_WEIGHTS: [[f64; 5]; 5] = [
    [0.0, 0.5, 0.2, 0.3, 0.4],
    [0.5, 0.0, 0.1, 0.2, 0.0],
    [0.2, 0.1, 0.0, 0.0, 0.0],
    [0.3, 0.2, 0.0, 0.0, 0.0],
    [0.4, 0.0, 0.0, 0.0, 0.0],
];

pub fn toy_network() -> WeightedGraph {
    WeightedGraph::new(
        TOY_LABELS.iter().map(|s| s.to_string()).collect(),
        SquareMatrix::from_rows(&TOY_WEIGHTS).expect("5x5"),
    )
    .expect("toy weights are a valid similarity graph")
}

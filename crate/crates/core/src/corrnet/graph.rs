use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// Simple undirected graph with non-negative similarity weights.
///
/// Edge `(i, j)` exists iff `weight(i, j) > 0`. The weight matrix is
/// symmetric with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    weights: SquareMatrix,
}

impl WeightedGraph {
    pub fn new(labels: Vec<String>, weights: SquareMatrix) -> Result<Self> {
        let n = weights.n();
        if labels.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} labels for a {n}x{n} weight matrix",
                labels.len()
            )));
        }
        for i in 0..n {
            if weights[(i, i)] != 0.0 {
                return Err(Error::InvalidInput(format!(
                    "self-loop on `{}` (w = {})",
                    labels[i],
                    weights[(i, i)]
                )));
            }
            for j in (i + 1)..n {
                let (a, b) = (weights[(i, j)], weights[(j, i)]);
                if !a.is_finite() || a < 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "weight ({}, {}) = {a} must be finite and non-negative",
                        labels[i], labels[j]
                    )));
                }
                if a != b {
                    return Err(Error::InvalidInput(format!(
                        "weights are not symmetric at ({}, {}): {a} vs {b}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(WeightedGraph { labels, weights })
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(labels: Vec<String>) -> Self {
        let n = labels.len();
        WeightedGraph {
            labels,
            weights: SquareMatrix::zeros(n),
        }
    }

    /// Symmetric edge list form. Later duplicates overwrite earlier ones.
    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let n = labels.len();
        let mut w = SquareMatrix::zeros(n);
        for &(u, v, weight) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidInput(format!("bad edge ({u}, {v}) for {n} nodes")));
            }
            w[(u, v)] = weight;
            w[(v, u)] = weight;
        }
        Self::new(labels, w)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &SquareMatrix {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[(i, j)]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.weights[(i, j)] > 0.0
    }

    /// Edges with positive weight as `(i, j, w)`, `i < j`, in row order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let w = self.weights[(i, j)];
                if w > 0.0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges().iter().map(|e| e.2).sum()
    }

    /// Sum of weights incident to each node.
    pub fn strengths(&self) -> Vec<f64> {
        self.weights.rows().map(|r| r.iter().sum()).collect()
    }

    /// Copy with every weight multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::InvalidInput(format!("scale factor {factor} must be positive")));
        }
        Self::new(self.labels.clone(), self.weights.map(|w| w * factor))
    }

    /// Copy with nodes reordered: new node `k` is old node `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        WeightedGraph {
            labels: order.iter().map(|&i| self.labels[i].clone()).collect(),
            weights: self.weights.permuted(order),
        }
    }

    /// Copy with all edges incident to `node` removed; the node stays, isolated.
    pub fn deactivated(&self, node: usize) -> Self {
        let mut w = self.weights.clone();
        for j in 0..self.n() {
            w[(node, j)] = 0.0;
            w[(j, node)] = 0.0;
        }
        WeightedGraph {
            labels: self.labels.clone(),
            weights: w,
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

use serde::{Deserialize, Serialize};

use super::{Edge, FilterKind, FilteredGraph};
use crate::corrnet::WeightedGraph;
use crate::error::{Error, Result};

/// How similarities become edge lengths for the spanning tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MstMetric {
    /// `sqrt(2 (1 - w))`, with `w` read as an absolute correlation.
    #[default]
    Mantegna,
    /// `1 / w`.
    InverseWeight,
}

impl MstMetric {
    pub fn distance(self, w: f64) -> f64 {
        match self {
            MstMetric::Mantegna => (2.0 * (1.0 - w)).max(0.0).sqrt(),
            MstMetric::InverseWeight => 1.0 / w,
        }
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Minimum spanning tree over positive-similarity edges (Kruskal).
///
/// Ties in distance go to the lower `(u, v)` pair. Fails with the name of an
/// unreachable node when the positive-weight graph is disconnected.
pub fn mst(dense: &WeightedGraph, metric: MstMetric) -> Result<FilteredGraph> {
    let n = dense.n();
    if n < 2 {
        return Err(Error::TooFewNodes {
            required: 2,
            actual: n,
        });
    }
    let mut candidates: Vec<(f64, usize, usize)> = dense
        .edges()
        .into_iter()
        .map(|(u, v, w)| (metric.distance(w), u, v))
        .collect();
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut dsu = DisjointSet::new(n);
    let mut edges = Vec::with_capacity(n - 1);
    for (_, u, v) in candidates {
        if dsu.union(u, v) {
            edges.push(Edge::new(u, v, dense.weight(u, v)));
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    if edges.len() < n - 1 {
        let root = dsu.find(0);
        let stray = (1..n).find(|&v| dsu.find(v) != root).unwrap_or(0);
        return Err(Error::Disconnected(dense.labels()[stray].clone()));
    }
    Ok(FilteredGraph::assemble(
        FilterKind::Mst,
        dense.labels().to_vec(),
        edges,
        Vec::new(),
    ))
}

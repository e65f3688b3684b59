//! Weighted shortest paths where an edge costs the reciprocal of its weight.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::corrnet::WeightedGraph;
use crate::matrix::SquareMatrix;
use crate::par;

const NO_PARENT: usize = usize::MAX;

/// All-pairs weighted distances. Unreachable pairs hold `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    d: SquareMatrix,
}

impl DistanceMatrix {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[(i, j)]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.d.row(i)
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.d
    }

    /// Distance by label, if both labels exist.
    pub fn between(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        Some(self.d[(i, j)])
    }
}

/// Compressed adjacency over positive-weight edges with reciprocal costs.
pub(crate) struct CostGraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    costs: Vec<f64>,
}

impl CostGraph {
    pub(crate) fn new(g: &WeightedGraph) -> Self {
        let n = g.n();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        let mut costs = Vec::new();
        offsets.push(0);
        for i in 0..n {
            for (j, &w) in g.weights().row(i).iter().enumerate() {
                if w > 0.0 && j != i {
                    targets.push(j);
                    costs.push(1.0 / w);
                }
            }
            offsets.push(targets.len());
        }
        CostGraph {
            offsets,
            targets,
            costs,
        }
    }

    pub(crate) fn n(&self) -> usize {
        self.offsets.len() - 1
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Item {
    dist: f64,
    node: usize,
}

impl Eq for Item {}

impl Ord for Item {
    // Min-heap on distance, lower node first on ties.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reusable buffers for repeated single-source runs.
pub(crate) struct Dijkstra {
    pub(crate) dist: Vec<f64>,
    pub(crate) parent: Vec<usize>,
    heap: BinaryHeap<Item>,
}

impl Dijkstra {
    pub(crate) fn new(n: usize) -> Self {
        Dijkstra {
            dist: vec![f64::INFINITY; n],
            parent: vec![NO_PARENT; n],
            heap: BinaryHeap::with_capacity(n),
        }
    }

    /// Single-source distances from `source`, treating every edge incident to
    /// `blocked` as absent.
    pub(crate) fn run(&mut self, g: &CostGraph, source: usize, blocked: Option<usize>) {
        self.dist.fill(f64::INFINITY);
        self.parent.fill(NO_PARENT);
        self.heap.clear();
        self.dist[source] = 0.0;
        if blocked == Some(source) {
            return;
        }
        self.heap.push(Item {
            dist: 0.0,
            node: source,
        });
        while let Some(Item { dist, node }) = self.heap.pop() {
            if dist > self.dist[node] {
                continue;
            }
            let (lo, hi) = (g.offsets[node], g.offsets[node + 1]);
            for (&t, &c) in g.targets[lo..hi].iter().zip(&g.costs[lo..hi]) {
                if Some(t) == blocked {
                    continue;
                }
                let nd = dist + c;
                if nd < self.dist[t] {
                    self.dist[t] = nd;
                    self.parent[t] = node;
                    self.heap.push(Item { dist: nd, node: t });
                }
            }
        }
    }

    /// Marks every node that is some other node's predecessor.
    pub(crate) fn interior(&self, out: &mut [bool]) {
        out.fill(false);
        for &p in &self.parent {
            if p != NO_PARENT {
                out[p] = true;
            }
        }
    }
}

/// Distance rows plus, per source, which nodes are interior to its
/// shortest-path tree.
pub(crate) struct AllPairs {
    pub(crate) rows: Vec<Vec<f64>>,
    pub(crate) interior: Vec<Vec<bool>>,
}

pub(crate) fn all_pairs(g: &CostGraph) -> AllPairs {
    let n = g.n();
    let per_source: Vec<(Vec<f64>, Vec<bool>)> = par::map_indices(n, |s| {
        let mut dj = Dijkstra::new(n);
        dj.run(g, s, None);
        let mut interior = vec![false; n];
        dj.interior(&mut interior);
        (dj.dist, interior)
    });
    let (rows, interior) = per_source.into_iter().unzip();
    AllPairs { rows, interior }
}

/// Weighted shortest-path distances between every pair of nodes, each edge
/// costing `1 / w`. Zero-weight pairs are not edges.
pub fn shortest_paths(g: &WeightedGraph) -> DistanceMatrix {
    let ap = all_pairs(&CostGraph::new(g));
    let n = g.n();
    let mut data = Vec::with_capacity(n * n);
    for row in ap.rows {
        data.extend(row);
    }
    DistanceMatrix {
        labels: g.labels().to_vec(),
        d: SquareMatrix::from_vec(n, data).expect("n rows of n distances"),
    }
}

/// Sum of `1/d` over a distance row, skipping the source and one optional node.
#[inline]
pub(crate) fn reciprocal_sum(row: &[f64], source: usize, skip: Option<usize>) -> f64 {
    let mut acc = 0.0;
    for (t, &d) in row.iter().enumerate() {
        if t == source || Some(t) == skip || !d.is_finite() {
            continue;
        }
        acc += 1.0 / d;
    }
    acc
}

//! Sparse information-filtering networks: TMFG and minimum spanning tree.

mod certificate;
mod export;
mod mst;
mod tmfg;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corrnet::WeightedGraph;
use crate::error::Error;
pub use certificate::{planarity_certificate, PlanarityCertificate};
pub use export::{read_filtered_graph, write_edge_list, FilteredGraphMetadata};
pub use mst::{mst, MstMetric};
pub use tmfg::{tmfg, SEED_CANDIDATES, SEED_TRIALS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterKind {
    Tmfg,
    Mst,
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FilterKind::Tmfg => "tmfg",
            FilterKind::Mst => "mst",
        })
    }
}

impl FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "tmfg" => Ok(FilterKind::Tmfg),
            "mst" => Ok(FilterKind::Mst),
            other => Err(Error::InvalidInput(format!("unknown filter `{other}`"))),
        }
    }
}

/// An undirected retained edge, `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(a: usize, b: usize, weight: f64) -> Self {
        Edge {
            u: a.min(b),
            v: a.max(b),
            weight,
        }
    }
}

/// Filtered network with its construction provenance.
///
/// `edges` is the structural edge set in insertion order. `graph` carries the
/// same edges as a [`WeightedGraph`]; since that type only represents
/// positive weights, zero-similarity edges are structural but not traversable.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredGraph {
    kind: FilterKind,
    graph: WeightedGraph,
    edges: Vec<Edge>,
    faces: Vec<[usize; 3]>,
    retained_weight: f64,
}

impl FilteredGraph {
    pub(crate) fn assemble(
        kind: FilterKind,
        labels: Vec<String>,
        edges: Vec<Edge>,
        faces: Vec<[usize; 3]>,
    ) -> Self {
        let tuples: Vec<_> = edges.iter().map(|e| (e.u, e.v, e.weight)).collect();
        let graph = WeightedGraph::from_edges(labels, &tuples)
            .expect("filtered edges come from a valid weighted graph");
        let retained_weight = edges.iter().map(|e| e.weight).sum();
        FilteredGraph {
            kind,
            graph,
            edges,
            faces,
            retained_weight,
        }
    }

    /// Rebuilds a filtered graph from exported parts.
    pub fn from_parts(
        kind: FilterKind,
        labels: Vec<String>,
        edges: Vec<Edge>,
        faces: Vec<[usize; 3]>,
    ) -> crate::Result<Self> {
        let n = labels.len();
        if let Some(e) = edges.iter().find(|e| e.u >= n || e.v >= n || e.u == e.v) {
            return Err(Error::InvalidInput(format!("edge ({}, {}) invalid for {n} nodes", e.u, e.v)));
        }
        if let Some(e) = edges.iter().find(|e| !(e.weight >= 0.0 && e.weight.is_finite())) {
            return Err(Error::InvalidInput(format!("edge ({}, {}) has weight {}", e.u, e.v, e.weight)));
        }
        if faces.iter().flatten().any(|&v| v >= n) {
            return Err(Error::InvalidInput("face references an unknown node".into()));
        }
        Ok(Self::assemble(kind, labels, edges, faces))
    }

    pub fn kind(&self) -> FilterKind {
        self.kind
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn labels(&self) -> &[String] {
        self.graph.labels()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Triangular faces of a TMFG (outer face included); empty for an MST.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn retained_weight(&self) -> f64 {
        self.retained_weight
    }

    /// Structural edges that carry zero similarity.
    pub fn zero_weight_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.weight == 0.0)
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    /// Deletes an edge (faces are left untouched). Returns whether it existed.
    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        let (u, v) = (a.min(b), a.max(b));
        let before = self.edges.len();
        self.edges.retain(|e| (e.u, e.v) != (u, v));
        if self.edges.len() == before {
            return false;
        }
        let kind = self.kind;
        let faces = std::mem::take(&mut self.faces);
        *self = Self::assemble(kind, self.graph.labels().to_vec(), std::mem::take(&mut self.edges), faces);
        true
    }

    /// Neighbour lists over the structural edges.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n()];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    /// Structural connectivity, optionally ignoring one vertex.
    pub fn is_connected_without(&self, removed: Option<usize>) -> bool {
        let n = self.n();
        let adj = self.adjacency();
        let Some(start) = (0..n).find(|&v| Some(v) != removed) else {
            return true;
        };
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if Some(w) != removed && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n - usize::from(removed.is_some())
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_without(None)
    }
}

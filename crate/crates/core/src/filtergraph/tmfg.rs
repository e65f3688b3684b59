//! Triangulated Maximally Filtered Graph.
//!
//! Greedy construction of a maximal planar subgraph: start from a heavy
//! tetrahedron, then repeatedly drop the outside vertex with the largest
//! gain into a triangular face, splitting it into three. Each face caches its
//! best outside vertex in a max-heap; entries whose face has been split or
//! whose vertex has since been placed are discarded on pop and the face is
//! re-scored.
//!
//! The greedy pass is repeated from the heaviest few candidate tetrahedra and
//! the triangulation with the largest retained weight is kept.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::{Edge, FilterKind, FilteredGraph};
use crate::corrnet::WeightedGraph;
use crate::error::{Error, Result};

/// Seed tetrahedra are drawn from this many top-strength vertices.
pub const SEED_CANDIDATES: usize = 8;

/// Number of heaviest candidate tetrahedra the greedy pass is started from.
pub const SEED_TRIALS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Candidate {
    gain: f64,
    vertex: usize,
    face: usize,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    // Max gain first, then lowest vertex, then earliest face.
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| Reverse(self.vertex).cmp(&Reverse(other.vertex)))
            .then_with(|| Reverse(self.face).cmp(&Reverse(other.face)))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[inline]
fn face_gain(g: &WeightedGraph, v: usize, [a, b, c]: [usize; 3]) -> f64 {
    g.weight(v, a) + g.weight(v, b) + g.weight(v, c)
}

/// Best outside vertex for `face`; lowest index wins ties.
fn best_for_face(g: &WeightedGraph, face: [usize; 3], outside: &[usize]) -> Option<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for &v in outside {
        let gain = face_gain(g, v, face);
        match best {
            Some((bg, _)) if gain <= bg => {}
            _ => best = Some((gain, v)),
        }
    }
    best
}

/// Vertices ordered by decreasing strength, index ascending on ties.
fn by_strength(g: &WeightedGraph) -> Vec<usize> {
    let strength = g.strengths();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| strength[b].total_cmp(&strength[a]).then(a.cmp(&b)));
    order
}

/// 4-cliques among the strongest `SEED_CANDIDATES` vertices, heaviest first,
/// each sorted ascending. Ties go to the lexicographically smallest tuple.
pub(crate) fn seed_tetrahedra(g: &WeightedGraph) -> Vec<[usize; 4]> {
    let mut cand: Vec<usize> = by_strength(g).into_iter().take(SEED_CANDIDATES.min(g.n())).collect();
    cand.sort_unstable();
    let k = cand.len();
    let mut seeds = Vec::new();
    for a in 0..k {
        for b in (a + 1)..k {
            for c in (b + 1)..k {
                for d in (c + 1)..k {
                    let q = [cand[a], cand[b], cand[c], cand[d]];
                    let w = g.weight(q[0], q[1])
                        + g.weight(q[0], q[2])
                        + g.weight(q[0], q[3])
                        + g.weight(q[1], q[2])
                        + g.weight(q[1], q[3])
                        + g.weight(q[2], q[3]);
                    seeds.push((w, q));
                }
            }
        }
    }
    // Stable sort keeps lexicographic order among equal weights.
    seeds.sort_by(|x, y| y.0.total_cmp(&x.0));
    seeds.into_iter().map(|(_, q)| q).collect()
}

/// Heaviest candidate tetrahedron.
#[cfg(test)]
pub(crate) fn seed_tetrahedron(g: &WeightedGraph) -> [usize; 4] {
    seed_tetrahedra(g)[0]
}

fn sorted3(mut f: [usize; 3]) -> [usize; 3] {
    f.sort_unstable();
    f
}

/// Builds the TMFG of a dense similarity graph (`n >= 3`).
///
/// The result has `3(n - 2)` edges and `2n - 4` triangular faces. Edges whose
/// similarity is zero are still part of the triangulation; they appear in
/// [`FilteredGraph::edges`] but not in the traversable [`FilteredGraph::graph`].
pub fn tmfg(dense: &WeightedGraph) -> Result<FilteredGraph> {
    let n = dense.n();
    if n < 3 {
        return Err(Error::TooFewNodes {
            required: 3,
            actual: n,
        });
    }
    if n == 3 {
        let edges = [(0, 1), (0, 2), (1, 2)]
            .map(|(u, v)| Edge::new(u, v, dense.weight(u, v)))
            .to_vec();
        return Ok(FilteredGraph::assemble(
            FilterKind::Tmfg,
            dense.labels().to_vec(),
            edges,
            vec![[0, 1, 2], [0, 1, 2]],
        ));
    }

    // Exact ties keep the heavier-ranked seed.
    let mut best: Option<(f64, Vec<Edge>, Vec<[usize; 3]>)> = None;
    for seed in seed_tetrahedra(dense).into_iter().take(SEED_TRIALS) {
        let (edges, faces) = grow(dense, seed);
        let weight: f64 = edges.iter().map(|e| e.weight).sum();
        match best {
            Some((bw, _, _)) if weight <= bw => {}
            _ => best = Some((weight, edges, faces)),
        }
    }
    let (_, edges, faces) = best.expect("n >= 4 gives at least one seed");
    Ok(FilteredGraph::assemble(FilterKind::Tmfg, dense.labels().to_vec(), edges, faces))
}

/// One greedy pass from `seed`: edges in insertion order and the live faces.
fn grow(dense: &WeightedGraph, [a, b, c, d]: [usize; 4]) -> (Vec<Edge>, Vec<[usize; 3]>) {
    let n = dense.n();
    let mut edges = Vec::with_capacity(3 * (n - 2));
    let push_edge = |edges: &mut Vec<Edge>, u: usize, v: usize| {
        edges.push(Edge::new(u, v, dense.weight(u, v)));
    };
    for (u, v) in [(a, b), (a, c), (a, d), (b, c), (b, d), (c, d)] {
        push_edge(&mut edges, u, v);
    }
    let mut faces: Vec<[usize; 3]> = vec![[a, b, c], [a, b, d], [a, c, d], [b, c, d]];
    let mut alive = vec![true; 4];
    let mut placed = vec![false; n];
    for v in [a, b, c, d] {
        placed[v] = true;
    }
    let mut outside: Vec<usize> = (0..n).filter(|&v| !placed[v]).collect();

    let mut heap = BinaryHeap::with_capacity(4 * n);
    for (id, &f) in faces.iter().enumerate() {
        if let Some((gain, vertex)) = best_for_face(dense, f, &outside) {
            heap.push(Candidate { gain, vertex, face: id });
        }
    }

    while !outside.is_empty() {
        let top = heap.pop().expect("a live face always has a candidate while vertices remain");
        if !alive[top.face] {
            continue;
        }
        if placed[top.vertex] {
            if let Some((gain, vertex)) = best_for_face(dense, faces[top.face], &outside) {
                heap.push(Candidate { gain, vertex, face: top.face });
            }
            continue;
        }

        let v = top.vertex;
        let [i, j, k] = faces[top.face];
        placed[v] = true;
        outside.retain(|&u| u != v);
        alive[top.face] = false;
        push_edge(&mut edges, i, v);
        push_edge(&mut edges, j, v);
        push_edge(&mut edges, k, v);

        for nf in [[i, j, v], [i, k, v], [j, k, v]] {
            let nf = sorted3(nf);
            let id = faces.len();
            faces.push(nf);
            alive.push(true);
            if let Some((gain, vertex)) = best_for_face(dense, nf, &outside) {
                heap.push(Candidate { gain, vertex, face: id });
            }
        }
    }

    let live_faces = faces
        .into_iter()
        .zip(alive)
        .filter_map(|(f, ok)| ok.then_some(f))
        .collect();
    (edges, live_faces)
}

//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls into the library's algorithms; only plain data types
//! cross the boundary.
#![allow(dead_code)]

use infonet::corrnet::WeightedGraph;
use infonet::matrix::SquareMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i:02}")).collect()
}

/// Dense random similarity graph with weights in `[lo, hi)`.
pub fn random_dense(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> WeightedGraph {
    let mut w = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let x = rng.gen_range(lo..hi);
            w[(i, j)] = x;
            w[(j, i)] = x;
        }
    }
    WeightedGraph::new(labels(n), w).unwrap()
}

/// Random sparse graph: each pair present with probability `p`.
pub fn random_sparse(rng: &mut impl Rng, n: usize, p: f64) -> WeightedGraph {
    let mut w = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                let x = rng.gen_range(0.01..1.0);
                w[(i, j)] = x;
                w[(j, i)] = x;
            }
        }
    }
    WeightedGraph::new(labels(n), w).unwrap()
}

// ---------------------------------------------------------------------------
// Paths

/// Floyd–Warshall over edge cost `1 / w` (edges with `w <= 0` are absent).
pub fn floyd_warshall(w: &SquareMatrix) -> Vec<Vec<f64>> {
    let n = w.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for i in 0..n {
        d[i][i] = 0.0;
        for j in 0..n {
            if i != j && w[(i, j)] > 0.0 {
                d[i][j] = 1.0 / w[(i, j)];
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn deactivate(w: &SquareMatrix, k: usize) -> SquareMatrix {
    let mut out = w.clone();
    for j in 0..w.n() {
        out[(k, j)] = 0.0;
        out[(j, k)] = 0.0;
    }
    out
}

/// Mean of `1 / d` over ordered pairs, unreachable pairs contributing zero.
pub fn efficiency(w: &SquareMatrix) -> f64 {
    let n = w.n();
    let d = floyd_warshall(w);
    let mut s = 0.0;
    for (i, row) in d.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if i != j && x.is_finite() {
                s += 1.0 / x;
            }
        }
    }
    s / (n * (n - 1)) as f64
}

pub fn closeness(w: &SquareMatrix) -> Vec<f64> {
    let n = w.n();
    floyd_warshall(w)
        .iter()
        .map(|row| {
            let total: f64 = row.iter().sum();
            if total.is_finite() && total > 0.0 {
                (n - 1) as f64 / total
            } else {
                0.0
            }
        })
        .collect()
}

/// `(eps(G) - eps(G'_k)) / eps(G)` with every efficiency recomputed from scratch.
pub fn information(w: &SquareMatrix) -> Vec<f64> {
    let base = efficiency(w);
    (0..w.n())
        .map(|k| (base - efficiency(&deactivate(w, k))) / base)
        .collect()
}

pub fn deactivation_efficiencies(w: &SquareMatrix) -> Vec<f64> {
    (0..w.n()).map(|k| efficiency(&deactivate(w, k))).collect()
}

/// Unweighted BFS closeness `(n-1) / sum of hop counts`.
pub fn hop_closeness(adj: &[Vec<usize>]) -> Vec<f64> {
    let n = adj.len();
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if dist.contains(&usize::MAX) {
                0.0
            } else {
                (n - 1) as f64 / dist.iter().sum::<usize>() as f64
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Planarity by Kuratowski subdivision search (small graphs only)

pub type EdgeSet = std::collections::BTreeSet<(usize, usize)>;

fn has(edges: &EdgeSet, a: usize, b: usize) -> bool {
    edges.contains(&(a.min(b), a.max(b)))
}

/// Can every pair be joined by internally disjoint paths whose interior
/// vertices come from `spare` (each used at most once)?
fn route(edges: &EdgeSet, pairs: &[(usize, usize)], spare: &mut Vec<usize>) -> bool {
    let Some((&(a, b), rest)) = pairs.split_first() else {
        return true;
    };
    if has(edges, a, b) && route(edges, rest, spare) {
        return true;
    }
    // Paths through one or two spare vertices are enough for n <= 7.
    for i in 0..spare.len() {
        let x = spare[i];
        if has(edges, a, x) && has(edges, x, b) {
            spare.remove(i);
            let ok = route(edges, rest, spare);
            spare.insert(i, x);
            if ok {
                return true;
            }
        }
        for j in 0..spare.len() {
            if i == j {
                continue;
            }
            let y = spare[j];
            if has(edges, a, x) && has(edges, x, y) && has(edges, y, b) {
                let mut left: Vec<usize> = spare.iter().copied().filter(|&v| v != x && v != y).collect();
                if route(edges, rest, &mut left) {
                    return true;
                }
            }
        }
    }
    false
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Planarity via Kuratowski's theorem, exact for `n <= 7`.
pub fn is_planar_small(n: usize, edges: &EdgeSet) -> bool {
    assert!(n <= 7, "subdivision search only covers n <= 7");
    if n <= 4 {
        return true;
    }
    for branch in subsets(n, 5) {
        let mut spare: Vec<usize> = (0..n).filter(|v| !branch.contains(v)).collect();
        let pairs: Vec<(usize, usize)> = subsets(5, 2).iter().map(|p| (branch[p[0]], branch[p[1]])).collect();
        if route(edges, &pairs, &mut spare) {
            return false;
        }
    }
    if n >= 6 {
        for six in subsets(n, 6) {
            let mut spare: Vec<usize> = (0..n).filter(|v| !six.contains(v)).collect();
            // bipartitions with six[0] on the left
            for rest in subsets(5, 2) {
                let left = [six[0], six[1 + rest[0]], six[1 + rest[1]]];
                let right: Vec<usize> = six.iter().copied().filter(|v| !left.contains(v)).collect();
                let pairs: Vec<(usize, usize)> =
                    left.iter().flat_map(|&l| right.iter().map(move |&r| (l, r))).collect();
                if route(edges, &pairs, &mut spare) {
                    return false;
                }
            }
        }
    }
    true
}

/// Maximum total weight of a maximal planar subgraph of the complete graph,
/// by enumerating which `C(n,2) - 3(n-2)` edges to drop (cheapest first).
pub fn max_planar_weight(w: &SquareMatrix) -> f64 {
    let n = w.n();
    let all: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let drop = all.len() - 3 * (n - 2);
    let mut candidates: Vec<(f64, Vec<usize>)> = subsets(all.len(), drop)
        .into_iter()
        .map(|s| (s.iter().map(|&e| w[all[e]]).sum(), s))
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = all.iter().map(|&e| w[e]).sum();
    for (removed, set) in candidates {
        let kept: EdgeSet = all
            .iter()
            .enumerate()
            .filter(|(k, _)| !set.contains(k))
            .map(|(_, &e)| e)
            .collect();
        if is_planar_small(n, &kept) {
            return total - removed;
        }
    }
    unreachable!("some maximal planar subgraph exists")
}

// ---------------------------------------------------------------------------
// Spanning trees

/// Decodes a Prüfer sequence into tree edges on `seq.len() + 2` nodes.
pub fn prufer_edges(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((last[0], last[1]));
    edges
}

/// Minimum total cost spanning tree by enumerating all `n^(n-2)` trees.
pub fn brute_force_mst(n: usize, cost: impl Fn(usize, usize) -> f64) -> (f64, EdgeSet) {
    let k = n - 2;
    let mut seq = vec![0usize; k];
    let mut best = (f64::INFINITY, EdgeSet::new());
    loop {
        let edges = prufer_edges(&seq);
        let c: f64 = edges.iter().map(|&(u, v)| cost(u, v)).sum();
        if c < best.0 {
            best = (c, edges.into_iter().collect());
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return best;
            }
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Statistics

/// Textbook two-pass Pearson correlation.
pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Hyndman–Fan type 7 quantile with `p` in `[0, 1]`.
pub fn quantile(xs: &[f64], p: f64) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let h = (v.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

/// Indices ordered by value descending, ties by index.
pub fn rank_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    idx
}

// ---------------------------------------------------------------------------
// Toy network

pub const TOY: [[f64; 5]; 5] = [
    [0.0, 0.5, 0.2, 0.3, 0.4],
    [0.5, 0.0, 0.1, 0.2, 0.0],
    [0.2, 0.1, 0.0, 0.0, 0.0],
    [0.3, 0.2, 0.0, 0.0, 0.0],
    [0.4, 0.0, 0.0, 0.0, 0.0],
];

pub fn toy_matrix() -> SquareMatrix {
    SquareMatrix::from_rows(&TOY).unwrap()
}

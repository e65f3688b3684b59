use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::FilteredGraph;

/// Combinatorial evidence that a filtered graph is a sphere triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityCertificate {
    /// `m == 3(n - 2)`.
    pub edge_count_ok: bool,
    /// `v - e + f == 2` over the face list, every face a triangle of existing
    /// edges, every edge on exactly two faces.
    pub euler_ok: bool,
    /// Connected over the structural edge set, zero-weight edges included.
    pub connected: bool,
}

impl PlanarityCertificate {
    pub fn is_valid(&self) -> bool {
        self.edge_count_ok && self.euler_ok && self.connected
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Checks a TMFG against the maximal-planar counts. Diagnostic only: other
/// filter kinds simply fail the checks.
pub fn planarity_certificate(fg: &FilteredGraph) -> PlanarityCertificate {
    let n = fg.n();
    let m = fg.edges().len();
    let edge_count_ok = n >= 3 && m == 3 * (n - 2);

    let edge_set: HashSet<(usize, usize)> = fg.edges().iter().map(|e| key(e.u, e.v)).collect();
    let simple = edge_set.len() == m;

    let mut incidence: HashMap<(usize, usize), usize> = HashMap::with_capacity(m);
    let mut faces_ok = !fg.faces().is_empty();
    for &[a, b, c] in fg.faces() {
        if a == b || b == c || a == c {
            faces_ok = false;
            break;
        }
        for e in [key(a, b), key(a, c), key(b, c)] {
            if !edge_set.contains(&e) {
                faces_ok = false;
            }
            *incidence.entry(e).or_default() += 1;
        }
    }
    let closed = faces_ok && incidence.len() == edge_set.len() && incidence.values().all(|&k| k == 2);
    let euler = n as i64 - m as i64 + fg.faces().len() as i64 == 2;

    PlanarityCertificate {
        edge_count_ok,
        euler_ok: simple && closed && euler,
        connected: fg.is_connected(),
    }
}

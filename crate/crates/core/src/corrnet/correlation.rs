use std::ops::Range;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::marketdata::ReturnPanel;
use crate::matrix::SquareMatrix;
use crate::par;

/// Which returns went into a correlation estimate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelationWindow {
    /// Stamp of the first and last return row used.
    pub first: DateTime<Utc>,
    pub last: DateTime<Utc>,
    pub first_row: usize,
    pub observations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    symbols: Vec<String>,
    values: SquareMatrix,
    window: CorrelationWindow,
}

impl CorrelationMatrix {
    /// Wraps a precomputed matrix, checking symmetry, range and unit diagonal.
    pub fn new(symbols: Vec<String>, values: SquareMatrix, window: CorrelationWindow) -> Result<Self> {
        let n = values.n();
        if symbols.len() != n {
            return Err(Error::InvalidInput(format!("{} symbols for a {n}x{n} matrix", symbols.len())));
        }
        if values.max_asymmetry() > 1e-12 {
            return Err(Error::InvalidInput("correlation matrix is not symmetric".into()));
        }
        for i in 0..n {
            if values[(i, i)] != 1.0 {
                return Err(Error::InvalidInput(format!("diagonal entry {i} is not 1")));
            }
        }
        if values.as_slice().iter().any(|c| !(-1.0..=1.0).contains(c)) {
            return Err(Error::InvalidInput("correlation outside [-1, 1]".into()));
        }
        Ok(CorrelationMatrix {
            symbols,
            values,
            window,
        })
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn values(&self) -> &SquareMatrix {
        &self.values
    }

    pub fn window(&self) -> &CorrelationWindow {
        &self.window
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }
}

/// Centered column scaled to unit Euclidean norm; `None` for a constant column.
fn standardize(x: &[f64]) -> Option<Vec<f64>> {
    let first = x[0];
    if x.iter().all(|&v| v == first) {
        return None;
    }
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let centered: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let norm = dot(&centered, &centered).sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return None;
    }
    Some(centered.into_iter().map(|v| v / norm).collect())
}

/// Dot product with four independent accumulators; fixed order, so the
/// result is reproducible.
#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for k in 0..chunks {
        let i = 4 * k;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut tail = 0.0;
    for i in 4 * chunks..a.len() {
        tail += a[i] * b[i];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// Sample Pearson correlations of all panel columns over `rows`.
///
/// A column with zero variance in the window gets coefficient 0 against every
/// other column while its diagonal entry stays 1.
pub fn correlation_matrix(panel: &ReturnPanel, rows: Range<usize>) -> Result<CorrelationMatrix> {
    let n = panel.n_symbols();
    if n < 2 {
        return Err(Error::TooFewNodes {
            required: 2,
            actual: n,
        });
    }
    if rows.start > rows.end || rows.end > panel.n_rows() {
        return Err(Error::InvalidInput(format!(
            "row range {rows:?} outside panel of {} rows",
            panel.n_rows()
        )));
    }
    let m = rows.len();
    if m < 3 {
        return Err(Error::TooFewObservations(m));
    }

    let standardized: Vec<Option<Vec<f64>>> =
        par::map_indices(n, |i| standardize(&panel.column(i)[rows.clone()]));
    for (i, z) in standardized.iter().enumerate() {
        if z.is_none() {
            log::warn!(
                "`{}` has zero variance over rows {rows:?}; its correlations are set to 0",
                panel.symbols()[i]
            );
        }
    }

    // Upper triangle, row by row.
    let upper: Vec<Vec<f64>> = par::map_indices(n, |i| {
        ((i + 1)..n)
            .map(|j| match (&standardized[i], &standardized[j]) {
                (Some(a), Some(b)) => dot(a, b).clamp(-1.0, 1.0),
                _ => 0.0,
            })
            .collect()
    });

    let mut values = SquareMatrix::identity(n);
    for (i, row) in upper.iter().enumerate() {
        for (k, &c) in row.iter().enumerate() {
            let j = i + 1 + k;
            values[(i, j)] = c;
            values[(j, i)] = c;
        }
    }

    let stamps = panel.return_timestamps();
    let window = CorrelationWindow {
        first: stamps[rows.start],
        last: stamps[rows.end - 1],
        first_row: rows.start,
        observations: m,
    };
    Ok(CorrelationMatrix {
        symbols: panel.symbols().to_vec(),
        values,
        window,
    })
}

/// Absolute-value similarity graph with a zeroed diagonal.
pub fn to_similarity_graph(corr: &CorrelationMatrix) -> WeightedGraph {
    let mut w = corr.values().map(f64::abs);
    for i in 0..corr.n() {
        w[(i, i)] = 0.0;
    }
    WeightedGraph::new(corr.symbols().to_vec(), w).expect("abs of a valid correlation matrix is a valid weight matrix")
}

/// The `k` largest off-diagonal coefficients by signed value.
///
/// Each pair is reported once as `(a, b, c)` with `a < b` lexicographically;
/// ties are broken by that pair. `k` larger than the number of pairs returns
/// every pair.
pub fn top_correlations(corr: &CorrelationMatrix, k: usize) -> Result<Vec<(String, String, f64)>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let syms = corr.symbols();
    let n = corr.n();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = if syms[i] <= syms[j] { (i, j) } else { (j, i) };
            pairs.push((a, b, corr.get(i, j)));
        }
    }
    pairs.sort_by(|x, y| {
        y.2.total_cmp(&x.2)
            .then_with(|| syms[x.0].cmp(&syms[y.0]))
            .then_with(|| syms[x.1].cmp(&syms[y.1]))
    });
    pairs.truncate(k);
    Ok(pairs
        .into_iter()
        .map(|(a, b, c)| (syms[a].clone(), syms[b].clone(), c))
        .collect())
}

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::paths::{all_pairs, reciprocal_sum, AllPairs, CostGraph, Dijkstra};
use crate::corrnet::WeightedGraph;
use crate::error::{Error, Result};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Degree,
    Closeness,
    Information,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Degree, Measure::Closeness, Measure::Information];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Closeness => "closeness",
            Measure::Information => "information",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "degree" => Ok(Measure::Degree),
            "closeness" => Ok(Measure::Closeness),
            "information" | "info" => Ok(Measure::Information),
            other => Err(Error::InvalidInput(format!("unknown measure `{other}`"))),
        }
    }
}

fn require_nodes(g: &WeightedGraph, required: usize) -> Result<()> {
    if g.n() < required {
        return Err(Error::TooFewNodes {
            required,
            actual: g.n(),
        });
    }
    Ok(())
}

/// Number of positive-weight neighbours divided by `n - 1`.
pub fn degree_centrality(g: &WeightedGraph) -> Result<Vec<f64>> {
    require_nodes(g, 2)?;
    let denom = (g.n() - 1) as f64;
    Ok(g.weights()
        .rows()
        .enumerate()
        .map(|(i, row)| {
            let deg = row.iter().enumerate().filter(|&(j, &w)| j != i && w > 0.0).count();
            deg as f64 / denom
        })
        .collect())
}

fn closeness_from_rows(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.len();
    rows.iter()
        .enumerate()
        .map(|(s, row)| {
            let mut total = 0.0;
            for (t, &d) in row.iter().enumerate() {
                if t == s {
                    continue;
                }
                if !d.is_finite() {
                    return 0.0;
                }
                total += d;
            }
            if total > 0.0 {
                (n - 1) as f64 / total
            } else {
                0.0
            }
        })
        .collect()
}

/// `(n - 1) / sum_j d(i, j)`; zero for a node that cannot reach every other.
pub fn closeness_centrality(g: &WeightedGraph) -> Result<Vec<f64>> {
    require_nodes(g, 2)?;
    let ap = all_pairs(&CostGraph::new(g));
    Ok(closeness_from_rows(&ap.rows))
}

fn pair_count(n: usize) -> f64 {
    (n * (n - 1)) as f64
}

fn efficiency_from_rows(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let total: f64 = rows
        .iter()
        .enumerate()
        .map(|(s, row)| reciprocal_sum(row, s, None))
        .sum();
    total / pair_count(n)
}

/// Mean of `1 / d(i, j)` over ordered pairs `i != j`; unreachable pairs add 0.
pub fn efficiency(g: &WeightedGraph) -> Result<f64> {
    require_nodes(g, 2)?;
    let ap = all_pairs(&CostGraph::new(g));
    Ok(efficiency_from_rows(&ap.rows))
}

/// Efficiency of the graph with all edges of `k` removed.
///
/// Only sources whose shortest-path tree routes through `k` are re-run; for
/// the rest the base distances already avoid `k`.
fn deactivated_efficiency(cg: &CostGraph, base: &AllPairs, k: usize, dj: &mut Dijkstra) -> f64 {
    let n = cg.n();
    let mut total = 0.0;
    for s in 0..n {
        if s == k {
            continue;
        }
        total += if base.interior[s][k] {
            dj.run(cg, s, Some(k));
            reciprocal_sum(&dj.dist, s, Some(k))
        } else {
            reciprocal_sum(&base.rows[s], s, Some(k))
        };
    }
    total / pair_count(n)
}

fn deactivation_from(cg: &CostGraph, base: &AllPairs) -> Vec<f64> {
    let n = cg.n();
    par::map_indices(n, |k| {
        let mut dj = Dijkstra::new(n);
        deactivated_efficiency(cg, base, k, &mut dj)
    })
}

/// Efficiency after deactivating each node in turn.
pub fn deactivation_efficiencies(g: &WeightedGraph) -> Result<Vec<f64>> {
    require_nodes(g, 2)?;
    let cg = CostGraph::new(g);
    let base = all_pairs(&cg);
    Ok(deactivation_from(&cg, &base))
}

fn information_from(base_eff: f64, deactivated: &[f64]) -> Result<Vec<f64>> {
    if base_eff <= 0.0 {
        return Err(Error::ZeroEfficiency);
    }
    Ok(deactivated
        .iter()
        .map(|&e| (1.0 - e / base_eff).clamp(0.0, 1.0))
        .collect())
}

/// Relative efficiency drop when each node loses all of its edges.
pub fn information_centrality(g: &WeightedGraph) -> Result<Vec<f64>> {
    require_nodes(g, 2)?;
    let cg = CostGraph::new(g);
    let base = all_pairs(&cg);
    let eff = efficiency_from_rows(&base.rows);
    if eff <= 0.0 {
        return Err(Error::ZeroEfficiency);
    }
    information_from(eff, &deactivation_from(&cg, &base))
}

/// Mean node information centrality.
pub fn average_information_centrality(g: &WeightedGraph) -> Result<f64> {
    let values = information_centrality(g)?;
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityRecord {
    pub label: String,
    pub degree: f64,
    pub closeness: f64,
    pub information: f64,
}

/// Node measures plus network aggregates from one shortest-path pass.
///
/// Measures not requested are left as NaN in the records and absent from
/// [`NetworkCentrality::values`].
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkCentrality {
    pub labels: Vec<String>,
    pub degree: Option<Vec<f64>>,
    pub closeness: Option<Vec<f64>>,
    pub information: Option<Vec<f64>>,
    pub efficiency: f64,
    pub deactivation_efficiency: Option<Vec<f64>>,
}

impl NetworkCentrality {
    pub fn values(&self, m: Measure) -> Option<&[f64]> {
        match m {
            Measure::Degree => self.degree.as_deref(),
            Measure::Closeness => self.closeness.as_deref(),
            Measure::Information => self.information.as_deref(),
        }
    }

    /// Network average of a computed measure; for information this is `c_I(G)`.
    pub fn average(&self, m: Measure) -> Option<f64> {
        self.values(m).map(|v| v.iter().sum::<f64>() / v.len() as f64)
    }

    pub fn records(&self) -> Vec<CentralityRecord> {
        let pick = |v: &Option<Vec<f64>>, i: usize| v.as_ref().map_or(f64::NAN, |v| v[i]);
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| CentralityRecord {
                label: l.clone(),
                degree: pick(&self.degree, i),
                closeness: pick(&self.closeness, i),
                information: pick(&self.information, i),
            })
            .collect()
    }
}

/// Computes the requested measures, sharing the base all-pairs run.
pub fn compute_centrality(g: &WeightedGraph, measures: &BTreeSet<Measure>) -> Result<NetworkCentrality> {
    if measures.is_empty() {
        return Err(Error::EmptyMeasures);
    }
    require_nodes(g, 2)?;
    let cg = CostGraph::new(g);
    let base = all_pairs(&cg);
    let efficiency = efficiency_from_rows(&base.rows);

    let degree = measures
        .contains(&Measure::Degree)
        .then(|| degree_centrality(g))
        .transpose()?;
    let closeness = measures
        .contains(&Measure::Closeness)
        .then(|| closeness_from_rows(&base.rows));
    let (information, deactivation_efficiency) = if measures.contains(&Measure::Information) {
        let deact = deactivation_from(&cg, &base);
        (Some(information_from(efficiency, &deact)?), Some(deact))
    } else {
        (None, None)
    };
    Ok(NetworkCentrality {
        labels: g.labels().to_vec(),
        degree,
        closeness,
        information,
        efficiency,
        deactivation_efficiency,
    })
}

/// Top `k` `(label, value)` pairs by value descending, label ascending on ties.
pub fn ranking<S: AsRef<str>>(labels: &[S], values: &[f64], k: usize) -> Result<Vec<(String, f64)>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if labels.len() != values.len() {
        return Err(Error::InvalidInput(format!(
            "{} labels for {} values",
            labels.len(),
            values.len()
        )));
    }
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        values[b]
            .total_cmp(&values[a])
            .then_with(|| labels[a].as_ref().cmp(labels[b].as_ref()))
    });
    idx.truncate(k);
    Ok(idx
        .into_iter()
        .map(|i| (labels[i].as_ref().to_string(), values[i]))
        .collect())
}

use std::collections::HashMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{planarity_certificate, Edge, FilterKind, FilteredGraph, MstMetric, PlanarityCertificate};
use crate::error::{Error, Result};

/// JSON sidecar for an exported edge list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilteredGraphMetadata {
    pub kind: FilterKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MstMetric>,
    pub n: usize,
    pub labels: Vec<String>,
    pub edge_count: usize,
    pub retained_weight: f64,
    pub zero_weight_edges: usize,
    /// Faces as label triples (TMFG only).
    pub faces: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<PlanarityCertificate>,
}

impl FilteredGraphMetadata {
    pub fn describe(fg: &FilteredGraph, metric: Option<MstMetric>) -> Self {
        let l = fg.labels();
        FilteredGraphMetadata {
            kind: fg.kind(),
            metric,
            n: fg.n(),
            labels: l.to_vec(),
            edge_count: fg.edges().len(),
            retained_weight: fg.retained_weight(),
            zero_weight_edges: fg.zero_weight_edges().count(),
            faces: fg
                .faces()
                .iter()
                .map(|&[a, b, c]| [l[a].clone(), l[b].clone(), l[c].clone()])
                .collect(),
            certificate: (fg.kind() == FilterKind::Tmfg).then(|| planarity_certificate(fg)),
        }
    }
}

/// Writes `u,v,weight` rows with node labels, in insertion order.
pub fn write_edge_list<W: Write>(fg: &FilteredGraph, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["u", "v", "weight"])?;
    let l = fg.labels();
    for e in fg.edges() {
        w.write_record([l[e.u].as_str(), l[e.v].as_str(), &e.weight.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an edge list plus its sidecar back into a [`FilteredGraph`].
pub fn read_filtered_graph<R: Read>(edges: R, meta: &FilteredGraphMetadata) -> Result<FilteredGraph> {
    let index: HashMap<&str, usize> = meta
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let lookup = |label: &str| -> Result<usize> {
        index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(label.to_string()))
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(edges);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() != 3 {
            return Err(Error::Parse(format!("edge row has {} fields, expected 3", rec.len())));
        }
        let weight: f64 = rec[2]
            .parse()
            .map_err(|_| Error::Parse(format!("bad edge weight `{}`", &rec[2])))?;
        out.push(Edge::new(lookup(&rec[0])?, lookup(&rec[1])?, weight));
    }
    let faces = meta
        .faces
        .iter()
        .map(|[a, b, c]| Ok([lookup(a)?, lookup(b)?, lookup(c)?]))
        .collect::<Result<Vec<_>>>()?;
    FilteredGraph::from_parts(meta.kind, meta.labels.clone(), out, faces)
}

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{ranking, Measure, NetworkCentrality};
use crate::error::Result;

fn cell(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        v.to_string()
    }
}

/// `label,degree,closeness,information`; measures not computed are empty.
pub fn write_centrality_table<W: Write>(c: &NetworkCentrality, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["label", "degree", "closeness", "information"])?;
    for r in c.records() {
        w.write_record([r.label, cell(r.degree), cell(r.closeness), cell(r.information)])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub rank: usize,
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureRanking {
    pub measure: Measure,
    pub average: f64,
    pub top: Vec<RankedEntry>,
}

/// Network-level aggregates and top-k rankings, the JSON companion of the table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralitySummary {
    pub n: usize,
    pub efficiency: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub average_information: Option<f64>,
    pub rankings: Vec<MeasureRanking>,
}

impl CentralitySummary {
    pub fn describe(c: &NetworkCentrality, top: usize) -> Result<Self> {
        let mut rankings = Vec::new();
        for m in Measure::ALL {
            let Some(values) = c.values(m) else { continue };
            let top = ranking(&c.labels, values, top)?
                .into_iter()
                .enumerate()
                .map(|(i, (label, value))| RankedEntry {
                    rank: i + 1,
                    label,
                    value,
                })
                .collect();
            rankings.push(MeasureRanking {
                measure: m,
                average: c.average(m).unwrap_or(f64::NAN),
                top,
            });
        }
        Ok(CentralitySummary {
            n: c.labels.len(),
            efficiency: c.efficiency,
            average_information: c.average(Measure::Information),
            rankings,
        })
    }
}

/// `measure,rank,label,value` rows for every ranking in the summary.
pub fn write_rankings<W: Write>(s: &CentralitySummary, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["measure", "rank", "label", "value"])?;
    for r in &s.rankings {
        for e in &r.top {
            w.write_record([r.measure.name(), &e.rank.to_string(), &e.label, &e.value.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

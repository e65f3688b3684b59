use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{CorrelationMatrix, CorrelationWindow};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMetadata {
    pub symbols: Vec<String>,
    pub window: CorrelationWindow,
}

impl From<&CorrelationMatrix> for CorrelationMetadata {
    fn from(c: &CorrelationMatrix) -> Self {
        CorrelationMetadata {
            symbols: c.symbols().to_vec(),
            window: c.window().clone(),
        }
    }
}

/// Writes a labelled square matrix: a `symbol` header cell, then one column
/// and one row per label.
pub fn write_labeled_matrix<W: Write>(labels: &[String], m: &SquareMatrix, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["symbol".to_string()];
    header.extend(labels.iter().cloned());
    w.write_record(&header)?;
    for (label, row) in labels.iter().zip(m.rows()) {
        let mut rec = Vec::with_capacity(row.len() + 1);
        rec.push(label.clone());
        rec.extend(row.iter().map(f64::to_string));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a matrix in the [`write_labeled_matrix`] layout. Row labels must
/// repeat the header labels in order.
pub fn read_labeled_matrix<R: Read>(input: R) -> Result<(Vec<String>, SquareMatrix)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let labels: Vec<String> = rdr.headers()?.iter().skip(1).map(str::to_string).collect();
    let n = labels.len();
    let mut data = Vec::with_capacity(n * n);
    let mut count = 0;
    for rec in rdr.records() {
        let rec = rec?;
        if count >= n {
            return Err(Error::Parse(format!("matrix has more than {n} rows")));
        }
        if rec.len() != n + 1 {
            return Err(Error::Parse(format!("matrix row {} has {} fields, expected {}", count + 1, rec.len(), n + 1)));
        }
        if rec[0] != labels[count] {
            return Err(Error::Parse(format!(
                "matrix row {} is labelled `{}`, expected `{}`",
                count + 1,
                &rec[0],
                labels[count]
            )));
        }
        for field in rec.iter().skip(1) {
            data.push(
                field
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad matrix value `{field}`")))?,
            );
        }
        count += 1;
    }
    if count != n {
        return Err(Error::Parse(format!("matrix has {count} rows, expected {n}")));
    }
    let m = SquareMatrix::from_vec(n, data).expect("n*n values collected");
    Ok((labels, m))
}

pub fn write_correlation_csv<W: Write>(corr: &CorrelationMatrix, out: W) -> Result<()> {
    write_labeled_matrix(corr.symbols(), corr.values(), out)
}

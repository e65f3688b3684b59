use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("price file header is missing the `{0}` column")]
    MissingColumn(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("the return grid needs at least 2 instants, got {0}")]
    GridTooShort(usize),

    #[error("every symbol fell below the coverage threshold {min_coverage}: {report}")]
    AllSymbolsDropped { min_coverage: f64, report: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("correlation needs at least 3 observations, got {0}")]
    TooFewObservations(usize),

    #[error("operation needs at least {required} nodes, got {actual}")]
    TooFewNodes { required: usize, actual: usize },

    #[error("similarity graph is disconnected: node `{0}` cannot be reached")]
    Disconnected(String),

    #[error("graph efficiency is zero, information centrality is undefined")]
    ZeroEfficiency,

    #[error("network average of {measure} is not positive at window ending {window}")]
    ZeroNetworkAverage { measure: String, window: String },

    #[error("panel spans {available} return rows but one window needs {required}")]
    PanelTooShort { available: usize, required: usize },

    #[error("no centrality measures requested")]
    EmptyMeasures,

    #[error("measure `{0}` was not computed for this series")]
    MissingMeasure(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI for its one-line error report.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Io(_) => "E_IO",
            Error::Csv(_) | Error::Json(_) | Error::MissingColumn(_) | Error::Parse(_) => {
                "E_PARSE"
            }
            Error::InvalidInput(_)
            | Error::GridTooShort(_)
            | Error::UnknownSymbol(_)
            | Error::TooFewObservations(_)
            | Error::TooFewNodes { .. }
            | Error::PanelTooShort { .. }
            | Error::EmptyMeasures
            | Error::MissingMeasure(_) => "E_INPUT",
            Error::AllSymbolsDropped { .. } => "E_COVERAGE",
            Error::Disconnected(_) | Error::ZeroEfficiency | Error::ZeroNetworkAverage { .. } => {
                "E_COMPUTE"
            }
        }
    }
}

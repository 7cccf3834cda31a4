use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges")]
    EmptyInput,

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("no connected component with at least {requested} nodes (largest has {largest})")]
    ComponentTooSmall { requested: usize, largest: usize },

    #[error("{metric} did not converge within {iterations} iterations")]
    NotConverged { metric: String, iterations: usize },

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("removal order is not a permutation: {0}")]
    NotPermutation(String),

    #[error("curves are not aligned: {0}")]
    Mismatch(String),

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("malformed curve file: {0}")]
    CurveFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

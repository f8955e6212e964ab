use thiserror::Error;

/// Errors produced anywhere in the certification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state: Bloch vector norm {norm} exceeds 1")]
    InvalidState { norm: f64 },

    #[error("invalid measurement: axis norm {norm} is not 1")]
    InvalidMeasurement { norm: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("infeasible witness value {value}: above the qubit bound {bound}")]
    InfeasibleValue { value: f64, bound: f64 },

    #[error("index out of range: {0}")]
    Range(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidState { .. } => "invalid_state",
            Error::InvalidMeasurement { .. } => "invalid_measurement",
            Error::Shape(_) => "shape",
            Error::Capacity(_) => "capacity",
            Error::InfeasibleValue { .. } => "infeasible_value",
            Error::Range(_) => "range",
            Error::InsufficientData(_) => "insufficient_data",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

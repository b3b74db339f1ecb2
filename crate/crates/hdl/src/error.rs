use thiserror::Error;

pub type Result<T> = std::result::Result<T, HdlError>;

#[derive(Debug, Error)]
pub enum HdlError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] hdl_core::Error),
    #[error("invalid input: {0}")]
    Format(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

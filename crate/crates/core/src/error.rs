use thiserror::Error;

#[derive(Debug, Error)]
pub enum FlatError {
    #[error("matrix is not in SL(2,R): det = {det}")]
    NotUnimodular { det: f64 },

    #[error("invalid surface: {}", .0.join("; "))]
    InvalidSurface(Vec<String>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cannot mix radicands sqrt({0}) and sqrt({1})")]
    MixedRadicands(i64, i64),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("resource cap exceeded at R = {radius}: {what} limit {limit}")]
    ResourceCap { what: &'static str, limit: u64, radius: f64 },

    #[error("region is unbounded")]
    UnboundedRegion,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, FlatError>;

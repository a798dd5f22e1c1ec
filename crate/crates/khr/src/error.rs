use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("crossing index {index} out of range (diagram has {count} crossings)")]
    CrossingIndex { index: usize, count: usize },

    #[error("diagram has {crossings} crossings, exceeding the cap of {cap} (set KHR_CROSSING_CAP to raise)")]
    CrossingCap { crossings: usize, cap: usize },

    #[error("operation requires a knot (one component): {0}")]
    KnotOnly(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0}")]
    Domain(String),

    #[error("enumeration cap exceeded after {states} states (cap {cap}); refusing partial output")]
    CapExceeded { states: u64, cap: u64 },

    #[error("inconsistent constraints: {0}")]
    Inconsistent(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

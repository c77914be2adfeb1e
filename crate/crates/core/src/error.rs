use thiserror::Error;

/// Errors shared by the engine, classifiers and reporting layers.
#[derive(Debug, Error)]
pub enum CaError {
    #[error("invalid weight {0}: expected a power of two in 1..=256")]
    InvalidWeight(u32),

    #[error("invalid rule {0}: expected 0..=511")]
    InvalidRule(u32),

    #[error("invalid grid dimensions {rows}x{cols}")]
    InvalidDimensions { rows: usize, cols: usize },

    #[error("cell ({row}, {col}) out of range for a {rows}x{cols} grid")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("empty pattern has no convex hull")]
    EmptyPattern,

    #[error("invalid census config: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    TableParse { line: usize, message: String },

    #[error("result would have about {digits} decimal digits, over the {budget}-digit budget")]
    DigitBudget { digits: u64, budget: u64 },

    #[error("invalid count parameters: {0}")]
    InvalidCount(String),

    #[error("invalid PBM: {0}")]
    PbmParse(String),
}

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} out of range 0..={max}")]
    Range { index: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("derivative of S_{k} is unbounded at y = {y}")]
    Singularity { k: usize, y: f64 },

    #[error("integration did not converge: estimate {estimate:e}, error bound {error_bound:e} after {panels} panels")]
    NonConvergence {
        estimate: f64,
        error_bound: f64,
        panels: usize,
    },

    #[error("density evaluation failed at x = {x}: {reason}")]
    Density { x: f64, reason: String },

    #[error("invalid weight: {0}")]
    Weight(String),

    #[error("invalid node set: {0}")]
    Nodes(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

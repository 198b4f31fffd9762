use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("width mismatch: {left} vs {right} qubits")]
    WidthMismatch { left: usize, right: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("SCF did not converge after {iterations} iterations (last density change {last_change:e})")]
    ScfNotConverged { iterations: usize, last_change: f64 },

    #[error("symmetry sector is not closed under the Hamiltonian (leakage {leakage:e})")]
    TaperClosure { leakage: f64 },

    #[error("FCIDUMP line {line}: {message}")]
    Fcidump { line: usize, message: String },

    #[error("ground level is degenerate within {gap:e} hartree")]
    DegenerateGround { gap: f64 },

    #[error("circuit synthesis missed the target (fidelity {fidelity})")]
    Synthesis { fidelity: f64 },

    #[error("device: {0}")]
    Device(String),

    #[error("sampling plan: {0}")]
    Plan(String),

    #[error("tomography: {0}")]
    Tomography(String),

    #[error("regression: {0}")]
    Regression(String),

    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("parse: {0}")]
    Parse(String),

    #[error("missing or corrupt run file {path}: {message}")]
    RunFile { path: String, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short category label printed by the CLI before the message.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Config { .. } => "config",
            Error::Io(_) | Error::RunFile { .. } | Error::Csv(_) | Error::Json(_) => "io",
            Error::Parse(_) | Error::Fcidump { .. } => "parse",
            Error::Device(_) | Error::Plan(_) => "device",
            Error::WidthMismatch { .. } | Error::IndexOutOfRange { .. } | Error::InvalidInput(_) => {
                "input"
            }
            _ => "numerics",
        }
    }

    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

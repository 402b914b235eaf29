//! Deterministic experiments over the q(5,2) bracket library, each producing
//! an [`report::ExperimentReport`]. The `fo52` binary is a thin shell over
//! these functions.

pub mod experiments;
pub mod report;
pub mod store;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] fo52_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid input: {0}")]
    Input(String),
}

impl LabError {
    /// 4 for input and IO problems, 2 when a computation could not complete.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Core(fo52_core::Error::Parse(_)) => 4,
            LabError::Core(_) => 2,
            _ => 4,
        }
    }
}

pub use experiments::Family;
pub use report::{ExperimentReport, Status};

//! Library side of the `hypoham` command: input resolution, the bounds
//! ledger, the reproduction report and output rendering.

pub mod input;
pub mod ledger;
pub mod output;
pub mod repro;

use thiserror::Error;

use hypoham_core::constructions::ConstructionError;
use hypoham_core::graph::GraphError;
use hypoham_hog::HogError;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const ENVIRONMENT: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Environment(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Hog(#[from] HogError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => exit::MISMATCH,
            CliError::Usage(_) | CliError::Input(_) | CliError::Construction(_) | CliError::Graph(_) => {
                exit::USAGE
            }
            CliError::Environment(_) => exit::ENVIRONMENT,
            CliError::Hog(e) if e.is_environmental() => exit::ENVIRONMENT,
            CliError::Hog(_) => exit::USAGE,
        }
    }
}

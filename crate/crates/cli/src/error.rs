use std::io;

use gf2dav_core::{PolyError, RingError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse {input:?}: {source}")]
    Parse { input: String, source: PolyError },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("budget of {budget} nodes exhausted computing {what}; {what} >= {lower_bound}")]
    Budget {
        what: &'static str,
        budget: u64,
        lower_bound: usize,
    },
    #[error("the input sequence is irreducible")]
    Irreducible,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    /// 0 ok, 1 falsified invariant, 2 usage or parse, 3 budget, 4 irreducible input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant(_) | CliError::Io(_) => 1,
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Ring(_) => 2,
            CliError::Budget { .. } => 3,
            CliError::Irreducible => 4,
        }
    }
}

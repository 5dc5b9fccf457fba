use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse failure: {0}")]
    Parse(String),

    #[error("missing key: {0}")]
    MissingKey(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("non-positive distance {0}")]
    NonPositiveDistance(f64),

    #[error("unknown mode '{0}' (expected 'focusing' or 'beamforming')")]
    UnknownMode(String),

    #[error("vehicle grid is empty (length_D < vehicle_step)")]
    EmptyGrid,

    #[error("feasible set exhausted after {placed} of {requested} placements")]
    Infeasible { placed: usize, requested: usize },

    #[error("brute force needs {candidates} joint candidates, budget is {budget}")]
    BudgetExceeded { candidates: f64, budget: f64 },

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("vehicle grids differ between profile and baseline")]
    GridMismatch,

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible { .. } => 2,
            _ => 1,
        }
    }
}

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::instance::Violation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid instance: {}", Violations(.0))]
    InvalidInstance(Vec<Violation>),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("instance too large for exact solver (n = {n}, limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("cluster heuristic requires coordinates")]
    MissingCoordinates,

    #[error("budget of {budget} evaluations is smaller than the population size {population}")]
    BudgetTooSmall { budget: u64, population: usize },

    #[error("inconsistent site position for reader {0}")]
    InconsistentSite(String),

    #[error("unknown depot reader {0}")]
    UnknownDepot(String),

    #[error("invalid read event: {0}")]
    InvalidEvent(String),

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    /// True for errors raised because a solver's precondition does not hold
    /// for an otherwise valid input (as opposed to malformed input).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::TooLarge { .. } | Error::MissingCoordinates | Error::BudgetTooSmall { .. }
        )
    }
}

struct Violations<'a>(&'a [Violation]);

impl fmt::Display for Violations<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

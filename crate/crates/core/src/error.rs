use thiserror::Error;

/// Errors raised by model, simulation and statistics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside its admissible range.
    #[error("{name} = {value} is outside {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// Exhaustive enumeration was requested for too many agents.
    #[error("enumeration over {n} agents exceeds the limit of {limit}")]
    Size { n: usize, limit: usize },

    /// Fixed-point iteration ran out of budget.
    #[error("fixed-point iteration did not reach tolerance {tol:e} within {iterations} iterations (last step {last_step:e})")]
    NonConvergence {
        iterations: usize,
        tol: f64,
        last_step: f64,
    },

    /// Too few samples remain after the burn-in cut.
    #[error("{available} samples after burn-in, at least {required} required")]
    InsufficientData { available: usize, required: usize },

    /// A search task could not be built from the requested configuration.
    #[error("invalid task: {0}")]
    InvalidTask(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "[0, 1]",
        })
    }
}

//! Stochastic diffusion search as a generalized Ehrenfest urn.
//!
//! The crate has three parts:
//!
//! * [`model`]: the analytic two-state model. One agent's transition matrix
//!   depends on the population's active fraction; the steady state is the
//!   self-consistent activity `pi1`, and the population's active count is
//!   `Binomial(N, pi1)` in equilibrium. The ergodicity coefficient, the
//!   mean-field map and forward matrix products are exposed as numeric
//!   diagnostics.
//! * [`sim`]: a synchronous agent simulator (diffusion phase, then test
//!   phase) over pluggable [`sim::SearchTask`]s, including an exact urn task
//!   and a best-fit string search task.
//! * [`stats`]: burn-in aware summaries of simulated traces.
//!
//! ```
//! use sds_core::{model, ModelParams};
//!
//! let params = ModelParams::new(1000, 0.2, 0.001).unwrap();
//! let ss = model::steady_state(&params);
//! assert!((ss.expected_active - 750.08).abs() < 0.01);
//! ```

pub mod error;
pub mod model;
pub mod sim;
pub mod stats;

pub use error::{Error, Result};
pub use model::{MeanFieldState, ModelParams, SteadyState, TransitionMatrix2};
pub use sim::{
    Agent, BernoulliTask, Population, RngStream, SearchTask, StringTask, TaskKind,
};
pub use stats::{SummaryStats, Trace, TraceMeta};

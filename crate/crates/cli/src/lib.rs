//! Experiment runner for stochastic diffusion search.
//!
//! Each subcommand of the `sds` binary maps onto one function in
//! [`commands`]; all of them emit a [`csv::CsvDocument`] whose bytes are a
//! deterministic function of the flags.

pub mod args;
pub mod commands;
pub mod csv;
pub mod error;
pub mod grid;

pub use args::{execute, Cli};
pub use csv::CsvDocument;
pub use error::CliError;

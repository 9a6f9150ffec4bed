//! Shared fixtures for the criterion benches.

use sds_core::ModelParams;

/// The four false-negative rates of the reference experiment.
pub const REFERENCE_P_MINUS: [f64; 4] = [0.1, 0.2, 0.5, 0.7];

pub fn reference_params(p_minus: f64) -> ModelParams {
    ModelParams::new(1000, p_minus, 0.001).expect("reference parameters are valid")
}

use super::{build_transition_matrix, ModelParams, TransitionMatrix2};
use crate::error::Result;

/// Contraction coefficient `1 - sum_j min_i M[i][j]`.
///
/// Zero when the rows coincide, one when their supports are disjoint.
pub fn ergodicity_coefficient(m: &TransitionMatrix2) -> f64 {
    let overlap = m.aa.min(m.na) + m.an.min(m.nn);
    (1.0 - overlap).clamp(0.0, 1.0)
}

/// Running sums of `1 - lambda(P_m)` along a trajectory of active counts.
///
/// Each term is at least `p_m (1 - p_minus)`, so the series diverges at
/// least linearly, which is what makes the interacting chain weakly ergodic.
pub fn weak_ergodicity_partial_sums(trajectory: &[usize], params: &ModelParams) -> Result<Vec<f64>> {
    let mut total = 0.0;
    trajectory
        .iter()
        .map(|&m| {
            let matrix = build_transition_matrix(m, params)?;
            total += 1.0 - ergodicity_coefficient(&matrix);
            Ok(total)
        })
        .collect()
}

/// Left-to-right product `P_1 P_2 ... P_k`; the identity for an empty input.
pub fn forward_product(matrices: &[TransitionMatrix2]) -> TransitionMatrix2 {
    matrices
        .iter()
        .fold(TransitionMatrix2::identity(), |acc, m| acc.mul(m))
}

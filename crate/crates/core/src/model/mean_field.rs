//! Self-consistency map on pairs `(activity distribution, agent matrix)`.
//!
//! A state is an element of the set `K` of pairs `(p, M_p)` where `M_p` is
//! the agent matrix generated by the active fraction `p[0]`. The map sends
//! `(p, P)` to `(pP, M_{pP})`; its fixed point is the equilibrium activity.

use super::{ModelParams, TransitionMatrix2};
use crate::error::{check_probability, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldState {
    activity: [f64; 2],
    matrix: TransitionMatrix2,
}

impl MeanFieldState {
    /// State whose matrix is generated by active fraction `active`.
    pub fn new(active: f64, params: &ModelParams) -> Result<Self> {
        check_probability("activity", active)?;
        Ok(Self {
            activity: [active, 1.0 - active],
            matrix: TransitionMatrix2::for_activity(active, params)?,
        })
    }

    pub fn all_inactive(params: &ModelParams) -> Self {
        Self::new(0.0, params).expect("0 is a valid activity")
    }

    pub fn all_active(params: &ModelParams) -> Self {
        Self::new(1.0, params).expect("1 is a valid activity")
    }

    pub fn activity(&self) -> [f64; 2] {
        self.activity
    }

    pub fn active(&self) -> f64 {
        self.activity[0]
    }

    pub fn matrix(&self) -> &TransitionMatrix2 {
        &self.matrix
    }

    /// Distance from the matrix this state's activity would generate.
    pub fn consistency_error(&self, params: &ModelParams) -> f64 {
        let own = TransitionMatrix2::for_activity(self.active(), params)
            .expect("activity validated on construction");
        k_matrix_norm(&self.matrix, &own)
    }
}

pub fn mean_field_map(state: &MeanFieldState, params: &ModelParams) -> MeanFieldState {
    let next = state.matrix.apply(state.activity);
    let active = next[0].clamp(0.0, 1.0);
    MeanFieldState::new(active, params).expect("clamped activity is a probability")
}

/// Distance induced by `||(p, P)|| = ||p||_1 + ||P||_1`, where the matrix
/// norm is the maximum absolute column sum.
pub fn k_distance(s1: &MeanFieldState, s2: &MeanFieldState) -> f64 {
    let dp = (s1.activity[0] - s2.activity[0]).abs() + (s1.activity[1] - s2.activity[1]).abs();
    dp + k_matrix_norm(&s1.matrix, &s2.matrix)
}

fn k_matrix_norm(a: &TransitionMatrix2, b: &TransitionMatrix2) -> f64 {
    let col_active = (a.aa - b.aa).abs() + (a.na - b.na).abs();
    let col_inactive = (a.an - b.an).abs() + (a.nn - b.nn).abs();
    col_active.max(col_inactive)
}

/// Applies [`mean_field_map`] until successive states are closer than `tol`.
///
/// Returns the last state and the number of map applications.
pub fn fixed_point_iterate(
    params: &ModelParams,
    init: MeanFieldState,
    tol: f64,
    max_iter: usize,
) -> Result<(MeanFieldState, usize)> {
    if !(tol > 0.0) {
        return Err(Error::Domain {
            name: "tol",
            value: tol,
            expected: "(0, inf)",
        });
    }
    if max_iter == 0 {
        return Err(Error::Domain {
            name: "max_iter",
            value: 0.0,
            expected: "[1, inf)",
        });
    }
    let mut state = init;
    let mut step = f64::INFINITY;
    for k in 1..=max_iter {
        let next = mean_field_map(&state, params);
        step = k_distance(&state, &next);
        state = next;
        if step < tol {
            return Ok((state, k));
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iter,
        tol,
        last_step: step,
    })
}

/// The first `steps` images of `init`, starting with `init` itself.
pub fn mean_field_trajectory(
    params: &ModelParams,
    init: MeanFieldState,
    steps: usize,
) -> Vec<MeanFieldState> {
    std::iter::successors(Some(init), |s| Some(mean_field_map(s, params)))
        .take(steps)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::steady_state;

    fn params(p_minus: f64, p_m: f64) -> ModelParams {
        ModelParams::new(1000, p_minus, p_m).unwrap()
    }

    #[test]
    fn analytic_root_is_fixed() {
        for (pm, hit) in [(0.1, 0.001), (0.2, 0.001), (0.5, 0.001), (0.7, 0.01)] {
            let p = params(pm, hit);
            let s = MeanFieldState::new(steady_state(&p).pi1, &p).unwrap();
            let image = mean_field_map(&s, &p);
            assert!((image.active() - s.active()).abs() < 1e-12);
            assert!((image.activity()[1] - s.activity()[1]).abs() < 1e-12);
            assert!((image.matrix().na - s.matrix().na).abs() < 1e-12);
        }
    }

    #[test]
    fn invariant_boundary_states() {
        let p = params(0.0, 0.3);
        let s = mean_field_map(&MeanFieldState::all_active(&p), &p);
        assert_eq!(s.activity(), [1.0, 0.0]);
        assert_eq!(s.matrix().rows()[0], [1.0, 0.0]);

        let p = params(0.4, 0.0);
        let s = mean_field_map(&MeanFieldState::all_inactive(&p), &p);
        assert_eq!(s.activity(), [0.0, 1.0]);
    }

    #[test]
    fn image_stays_in_k() {
        let p = params(0.3, 0.05);
        let mut s = MeanFieldState::new(0.42, &p).unwrap();
        for _ in 0..50 {
            s = mean_field_map(&s, &p);
            assert!(s.consistency_error(&p) < 1e-12);
            assert!((s.activity()[0] + s.activity()[1] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn k_distance_examples() {
        let p = params(0.2, 0.001);
        let a = MeanFieldState::all_active(&p);
        let b = MeanFieldState::all_inactive(&p);
        assert_eq!(k_distance(&a, &a), 0.0);

        let swapped = MeanFieldState {
            activity: [0.0, 1.0],
            matrix: a.matrix,
        };
        assert_eq!(k_distance(&a, &swapped), 2.0);

        let delta = 0.0123;
        let mut shifted = b;
        shifted.matrix.na += delta;
        shifted.matrix.nn -= delta;
        assert!((k_distance(&b, &shifted) - delta).abs() < 1e-15);
    }

    #[test]
    fn converges_from_both_ends() {
        let p = params(0.2, 0.001);
        let (s, _) = fixed_point_iterate(&p, MeanFieldState::all_inactive(&p), 1e-12, 100_000).unwrap();
        assert_eq!(format!("{:.1}", s.active() * 1000.0), "750.1");
        assert!((s.active() - 0.750_083_268_585).abs() < 1e-11);

        let p = params(0.5, 0.001);
        let (lo, _) = fixed_point_iterate(&p, MeanFieldState::all_inactive(&p), 1e-12, 100_000).unwrap();
        let (hi, _) = fixed_point_iterate(&p, MeanFieldState::all_active(&p), 1e-12, 100_000).unwrap();
        assert!((lo.active() - 0.030654).abs() < 1e-6);
        assert!((lo.active() - hi.active()).abs() < 1e-9);

        let p = params(0.3, 0.0);
        let (z, _) = fixed_point_iterate(&p, MeanFieldState::all_inactive(&p), 1e-12, 10).unwrap();
        assert_eq!(z.active(), 0.0);
    }

    #[test]
    fn iteration_errors() {
        let p = params(0.5, 0.001);
        let init = MeanFieldState::all_inactive(&p);
        assert!(matches!(
            fixed_point_iterate(&p, init, 1e-12, 3),
            Err(Error::NonConvergence { iterations: 3, .. })
        ));
        assert!(fixed_point_iterate(&p, init, 0.0, 3).is_err());
        assert!(fixed_point_iterate(&p, init, 1e-9, 0).is_err());
    }

    #[test]
    fn trajectory_starts_at_init() {
        let p = params(0.2, 0.001);
        let init = MeanFieldState::all_inactive(&p);
        let traj = mean_field_trajectory(&p, init, 5);
        assert_eq!(traj.len(), 5);
        assert_eq!(traj[0], init);
        assert_eq!(traj[1], mean_field_map(&init, &p));
    }
}

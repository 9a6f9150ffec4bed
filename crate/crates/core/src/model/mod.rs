//! Analytic two-state model of an agent population.
//!
//! Each agent is a two-state chain over `{active, inactive}`. An active agent
//! stays active with probability `1 - p_minus`; an inactive agent becomes
//! active with probability [`p1_of_activity`] of the current active fraction.
//! Because all agents share one matrix, the equilibrium of the population is
//! a product measure and the active count is binomial.

mod distribution;
mod ergodicity;
mod mean_field;

pub use distribution::{aggregate_configurations, configuration_probability, stationary_pmf};
pub use ergodicity::{ergodicity_coefficient, forward_product, weak_ergodicity_partial_sums};
pub use mean_field::{
    fixed_point_iterate, k_distance, mean_field_map, mean_field_trajectory, MeanFieldState,
};

use crate::error::{check_probability, Error, Result};

/// Leading quadratic coefficients below this are treated as zero.
pub const DEGENERATE_LEADING: f64 = 1e-14;

/// Rounding slack when deciding whether a root lies in `[0, 1]`.
const ROOT_SLACK: f64 = 1e-9;

/// Row-sum tolerance accepted by [`TransitionMatrix2::new`].
pub const STOCHASTIC_TOL: f64 = 1e-12;

/// Population size and the two search-space probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n_agents: usize,
    p_minus: f64,
    p_m: f64,
}

impl ModelParams {
    /// `p_minus` is the probability that an agent at the best solution fails
    /// its partial test; `p_m` the probability that a uniform resample lands
    /// on the best solution.
    pub fn new(n_agents: usize, p_minus: f64, p_m: f64) -> Result<Self> {
        if n_agents == 0 {
            return Err(Error::Domain {
                name: "n_agents",
                value: 0.0,
                expected: "[1, inf)",
            });
        }
        check_probability("p_minus", p_minus)?;
        check_probability("p_m", p_m)?;
        Ok(Self {
            n_agents,
            p_minus,
            p_m,
        })
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn p_minus(&self) -> f64 {
        self.p_minus
    }

    pub fn p_m(&self) -> f64 {
        self.p_m
    }

    /// Same probabilities, different population size.
    pub fn with_n_agents(&self, n_agents: usize) -> Result<Self> {
        Self::new(n_agents, self.p_minus, self.p_m)
    }
}

/// Row-stochastic 2x2 matrix over `{active, inactive}`.
///
/// Row 0 holds the transitions out of the active state, row 1 those out of
/// the inactive state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionMatrix2 {
    pub aa: f64,
    pub an: f64,
    pub na: f64,
    pub nn: f64,
}

impl TransitionMatrix2 {
    pub fn new(aa: f64, an: f64, na: f64, nn: f64) -> Result<Self> {
        for (name, v) in [("aa", aa), ("an", an), ("na", na), ("nn", nn)] {
            check_probability(name, v)?;
        }
        for (name, sum) in [("row active", aa + an), ("row inactive", na + nn)] {
            if (sum - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::Domain {
                    name,
                    value: sum,
                    expected: "row sum 1",
                });
            }
        }
        Ok(Self { aa, an, na, nn })
    }

    /// Builds the matrix from the two "move to active" probabilities.
    pub(crate) fn from_activation(stay_active: f64, become_active: f64) -> Self {
        Self {
            aa: stay_active,
            an: 1.0 - stay_active,
            na: become_active,
            nn: 1.0 - become_active,
        }
    }

    pub fn identity() -> Self {
        Self::from_activation(1.0, 0.0)
    }

    /// Agent matrix at a real-valued active fraction `x`.
    pub fn for_activity(x: f64, params: &ModelParams) -> Result<Self> {
        let p1 = p1_of_activity(x, params)?;
        Ok(Self::from_activation(1.0 - params.p_minus, p1))
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.aa, self.an], [self.na, self.nn]]
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            aa: self.aa * rhs.aa + self.an * rhs.na,
            an: self.aa * rhs.an + self.an * rhs.nn,
            na: self.na * rhs.aa + self.nn * rhs.na,
            nn: self.na * rhs.an + self.nn * rhs.nn,
        }
    }

    /// Row vector times matrix.
    pub fn apply(&self, dist: [f64; 2]) -> [f64; 2] {
        [
            dist[0] * self.aa + dist[1] * self.na,
            dist[0] * self.an + dist[1] * self.nn,
        ]
    }

    /// Largest absolute deviation of a row sum from one.
    pub fn row_sum_error(&self) -> f64 {
        ((self.aa + self.an) - 1.0)
            .abs()
            .max(((self.na + self.nn) - 1.0).abs())
    }

    /// Largest absolute difference between the two rows.
    pub fn row_spread(&self) -> f64 {
        (self.aa - self.na).abs().max((self.an - self.nn).abs())
    }

    /// Stationary distribution `(active, inactive)`. `None` when the matrix
    /// is the identity and every distribution is stationary.
    pub fn stationary(&self) -> Option<[f64; 2]> {
        let flow = self.an + self.na;
        if flow <= 0.0 {
            return None;
        }
        let active = self.na / flow;
        Some([active, 1.0 - active])
    }
}

/// Probability that an inactive agent is active after one iteration when a
/// fraction `x` of the population is active.
///
/// The agent copies an active agent's hypothesis with probability `x`, or
/// hits the best solution by resampling with probability `(1 - x) p_m`; in
/// both cases it must then pass a test, which it does with probability
/// `1 - p_minus`.
pub fn p1_of_activity(x: f64, params: &ModelParams) -> Result<f64> {
    check_probability("active fraction", x)?;
    let p = (1.0 - params.p_minus) * (x + (1.0 - x) * params.p_m);
    Ok(p.clamp(0.0, 1.0))
}

/// One-agent transition matrix when `m` of `N` agents are active.
pub fn build_transition_matrix(m: usize, params: &ModelParams) -> Result<TransitionMatrix2> {
    if m > params.n_agents {
        return Err(Error::Domain {
            name: "active count",
            value: m as f64,
            expected: "[0, N]",
        });
    }
    TransitionMatrix2::for_activity(m as f64 / params.n_agents as f64, params)
}

/// Analytic equilibrium of the population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub n_agents: usize,
    pub pi1: f64,
    pub pi2: f64,
    pub expected_active: f64,
    pub std_active: f64,
    pub mode_low: f64,
    pub mode_high: f64,
}

impl SteadyState {
    /// Most likely active count: `floor((N + 1) pi1)`, taking the lower
    /// neighbour when `(N + 1) pi1` is an integer and both are modes.
    pub fn mode(&self) -> usize {
        let h = self.mode_high;
        let m = if h.fract() == 0.0 { h - 1.0 } else { h.floor() };
        m.clamp(0.0, self.n_agents as f64) as usize
    }
}

/// Coefficients `(a, b, c)` of `a x^2 + b x + c = 0` whose nonnegative root is
/// the equilibrium activity.
///
/// They come from balancing the flux out of the active state, `x p_minus`,
/// against the flux into it, `(1 - x) p1(x)`.
pub fn balance_coefficients(p_minus: f64, p_m: f64) -> (f64, f64, f64) {
    let q = 1.0 - p_minus;
    (q * (1.0 - p_m), p_minus - q * (1.0 - 2.0 * p_m), -q * p_m)
}

/// Both roots of the balance quadratic, larger first. `None` when the
/// leading coefficient is degenerate.
pub fn balance_roots(p_minus: f64, p_m: f64) -> Option<(f64, f64)> {
    let (a, b, c) = balance_coefficients(p_minus, p_m);
    if a < DEGENERATE_LEADING {
        return None;
    }
    let sqrt_d = (b * b - 4.0 * a * c).max(0.0).sqrt();
    // Cancellation-free pair: q / a and c / q.
    let q = -0.5 * (b + b.signum() * sqrt_d);
    if q == 0.0 {
        return Some((0.0, 0.0));
    }
    let (r1, r2) = (q / a, c / q);
    Some(if r1 >= r2 { (r1, r2) } else { (r2, r1) })
}

/// Equilibrium probability that one agent is active.
///
/// With `p_m = 0` nothing ever activates an all-inactive population, so the
/// answer is zero regardless of `p_minus`.
pub fn balance_root(p_minus: f64, p_m: f64) -> f64 {
    if p_m == 0.0 {
        return 0.0;
    }
    let (_, b, c) = balance_coefficients(p_minus, p_m);
    let root = match balance_roots(p_minus, p_m) {
        // The larger root lies in [0, 1] up to rounding since the residual
        // is c <= 0 at 0 and p_minus >= 0 at 1.
        Some((hi, lo)) => {
            if (-ROOT_SLACK..=1.0 + ROOT_SLACK).contains(&hi) {
                hi
            } else {
                lo
            }
        }
        None if b != 0.0 => -c / b,
        None => 0.0,
    };
    root.clamp(0.0, 1.0)
}

/// Flux-balance residual `x p_minus - (1 - x) p1(x)` at activity `x`.
pub fn balance_residual(x: f64, p_minus: f64, p_m: f64) -> f64 {
    let p1 = (1.0 - p_minus) * (x + (1.0 - x) * p_m);
    x * p_minus - (1.0 - x) * p1
}

pub fn steady_state(params: &ModelParams) -> SteadyState {
    let pi1 = balance_root(params.p_minus, params.p_m);
    let pi2 = 1.0 - pi1;
    let n = params.n_agents as f64;
    let mode_high = (n + 1.0) * pi1;
    SteadyState {
        n_agents: params.n_agents,
        pi1,
        pi2,
        expected_active: n * pi1,
        std_active: (n * pi1 * pi2).sqrt(),
        mode_low: mode_high - 1.0,
        mode_high,
    }
}

/// Agent matrix at the equilibrium activity, the limit the interacting
/// chain approaches.
pub fn limit_matrix(params: &ModelParams) -> TransitionMatrix2 {
    let pi1 = balance_root(params.p_minus, params.p_m);
    TransitionMatrix2::for_activity(pi1, params).expect("equilibrium activity lies in [0, 1]")
}

/// Smallest population whose expected active count `N pi1` reaches one
/// agent. `None` when the equilibrium activity is zero.
///
/// Below this size the active count sits at zero almost all the time even
/// though `pi1` itself is positive.
pub fn activity_threshold(p_minus: f64, p_m: f64) -> Option<u64> {
    let pi1 = balance_root(p_minus, p_m);
    if pi1 <= 0.0 {
        return None;
    }
    let mut n = (1.0 / pi1).ceil() as u64;
    // Guard the ceil against rounding in 1 / pi1.
    while n > 1 && ((n - 1) as f64 * pi1).floor() >= 1.0 {
        n -= 1;
    }
    while (n as f64 * pi1).floor() < 1.0 {
        n += 1;
    }
    Some(n)
}

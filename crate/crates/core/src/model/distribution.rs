use super::ModelParams;
use crate::error::{check_probability, Error, Result};

/// Largest population enumerated by [`aggregate_configurations`].
pub const MAX_ENUMERATION: usize = 20;

fn ln_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (1..=k).map(|i| ((n - k + i) as f64 / i as f64).ln()).sum()
}

/// Equilibrium probability of exactly `n` active agents,
/// `C(N, n) pi1^n (1 - pi1)^(N - n)`, evaluated in log space.
pub fn stationary_pmf(params: &ModelParams, pi1: f64, n: usize) -> Result<f64> {
    check_probability("pi1", pi1)?;
    let big_n = params.n_agents();
    if n > big_n {
        return Err(Error::Domain {
            name: "active count",
            value: n as f64,
            expected: "[0, N]",
        });
    }
    // Degenerate endpoints would produce 0 * ln 0.
    if pi1 == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    if pi1 == 1.0 {
        return Ok(if n == big_n { 1.0 } else { 0.0 });
    }
    let ln_p = ln_binomial(big_n as u64, n as u64)
        + n as f64 * pi1.ln()
        + (big_n - n) as f64 * (-pi1).ln_1p();
    Ok(ln_p.exp().min(1.0))
}

/// Probability of one labelled configuration of activity flags under the
/// product equilibrium measure.
pub fn configuration_probability(config: &[bool], pi1: f64) -> f64 {
    let active = config.iter().filter(|&&a| a).count();
    let inactive = config.len() - active;
    pi1.powi(active as i32) * (1.0 - pi1).powi(inactive as i32)
}

/// Sums [`configuration_probability`] over all `2^n` configurations, grouped
/// by active count. Brute-force counterpart of [`stationary_pmf`].
pub fn aggregate_configurations(n: usize, pi1: f64) -> Result<Vec<f64>> {
    if n > MAX_ENUMERATION {
        return Err(Error::Size {
            n,
            limit: MAX_ENUMERATION,
        });
    }
    check_probability("pi1", pi1)?;
    let mut out = vec![0.0; n + 1];
    let mut config = vec![false; n];
    for mask in 0u32..(1u32 << n) {
        for (bit, slot) in config.iter_mut().enumerate() {
            *slot = mask >> bit & 1 == 1;
        }
        out[mask.count_ones() as usize] += configuration_probability(&config, pi1);
    }
    Ok(out)
}

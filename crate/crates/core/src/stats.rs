//! Burn-in aware summaries of simulated active-count series.

use crate::error::{Error, Result};
use crate::sim::TaskKind;

/// Provenance of a simulated trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceMeta {
    pub n_agents: usize,
    pub p_minus: f64,
    pub p_m: f64,
    pub iterations: usize,
    pub seed: u64,
    pub rng: String,
    pub task: TaskKind,
}

/// Active count after each iteration, `m_1 .. m_T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    values: Vec<usize>,
    meta: TraceMeta,
}

impl Trace {
    pub fn new(values: Vec<usize>, meta: TraceMeta) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| v > meta.n_agents) {
            return Err(Error::Domain {
                name: "active count",
                value: bad as f64,
                expected: "[0, N]",
            });
        }
        Ok(Self { values, meta })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn meta(&self) -> &TraceMeta {
        &self.meta
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub mean: f64,
    /// Sample standard deviation, `count - 1` denominator.
    pub std: f64,
    pub count: usize,
    pub burn_in: usize,
}

pub fn summarize(trace: &Trace, burn_in: usize) -> Result<SummaryStats> {
    summarize_values(trace.values(), burn_in)
}

pub fn summarize_values(values: &[usize], burn_in: usize) -> Result<SummaryStats> {
    let kept = retained(values, burn_in, 2)?;
    let count = kept.len();
    let mean = kept.iter().map(|&v| v as f64).sum::<f64>() / count as f64;
    let ss: f64 = kept.iter().map(|&v| (v as f64 - mean).powi(2)).sum();
    Ok(SummaryStats {
        mean,
        std: (ss / (count - 1) as f64).sqrt(),
        count,
        burn_in,
    })
}

/// Fraction of post-burn-in samples within `halfwidth` of `center`.
pub fn band_coverage(trace: &Trace, burn_in: usize, center: f64, halfwidth: f64) -> Result<f64> {
    band_coverage_values(trace.values(), burn_in, center, halfwidth)
}

pub fn band_coverage_values(
    values: &[usize],
    burn_in: usize,
    center: f64,
    halfwidth: f64,
) -> Result<f64> {
    if !(halfwidth >= 0.0) {
        return Err(Error::Domain {
            name: "halfwidth",
            value: halfwidth,
            expected: "[0, inf)",
        });
    }
    let kept = retained(values, burn_in, 1)?;
    let inside = kept
        .iter()
        .filter(|&&v| (v as f64 - center).abs() <= halfwidth)
        .count();
    Ok(inside as f64 / kept.len() as f64)
}

fn retained(values: &[usize], burn_in: usize, required: usize) -> Result<&[usize]> {
    let available = values.len().saturating_sub(burn_in);
    if available < required {
        return Err(Error::InsufficientData {
            available,
            required,
        });
    }
    Ok(&values[burn_in..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sample_example() {
        let s = summarize_values(&[1, 2, 3, 4], 2).unwrap();
        assert!((s.mean - 3.5).abs() < 1e-12);
        assert!((s.std - 0.5_f64.sqrt()).abs() < 1e-12);
        assert_eq!((s.count, s.burn_in), (2, 2));
    }

    #[test]
    fn constant_trace_has_zero_spread() {
        let s = summarize_values(&[7; 30], 5).unwrap();
        assert_eq!((s.mean, s.std), (7.0, 0.0));
    }

    #[test]
    fn too_short_after_burn_in() {
        assert_eq!(
            summarize_values(&[1, 2, 3], 3),
            Err(Error::InsufficientData {
                available: 0,
                required: 2
            })
        );
        assert!(summarize_values(&[1, 2, 3], 2).is_err());
        assert!(band_coverage_values(&[1, 2, 3], 3, 1.0, 1.0).is_err());
        assert!(band_coverage_values(&[1, 2, 3], 0, 1.0, -1.0).is_err());
    }

    #[test]
    fn coverage_examples() {
        assert_eq!(band_coverage_values(&[5; 10], 0, 5.0, 0.0).unwrap(), 1.0);
        assert_eq!(band_coverage_values(&[4, 6, 4, 6], 0, 5.0, 0.0).unwrap(), 0.0);
        assert_eq!(band_coverage_values(&[0, 0, 4, 6, 9, 5], 2, 5.0, 1.0).unwrap(), 0.75);
    }

    #[test]
    fn trace_rejects_counts_above_n() {
        let meta = TraceMeta {
            n_agents: 3,
            p_minus: 0.1,
            p_m: 0.5,
            iterations: 2,
            seed: 0,
            rng: "chacha8".into(),
            task: TaskKind::Urn,
        };
        assert!(Trace::new(vec![1, 4], meta.clone()).is_err());
        assert!(Trace::new(vec![1, 3], meta).is_ok());
    }
}

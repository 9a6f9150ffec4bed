use std::str::FromStr;

use crate::error::CliError;

/// Default false-negative grid: 0 to 0.99 in steps of 0.01.
pub fn default_p_minus_grid() -> Vec<f64> {
    (0..100).map(|i| i as f64 / 100.0).collect()
}

/// Default hit-probability grid, roughly logarithmic from 1e-4 to 0.5.
pub fn default_p_m_grid() -> Vec<f64> {
    vec![1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5]
}

/// Parses `a:b:step` (inclusive) or a comma-separated list.
pub fn parse_real_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let values = if let Some((start, rest)) = spec.split_once(':') {
        let (stop, step) = rest
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("range `{spec}` needs a:b:step")))?;
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if !(step > 0.0) || stop < start {
            return Err(CliError::Usage(format!(
                "range `{spec}` needs step > 0 and a <= b"
            )));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                // Index-based so the grid carries no accumulated drift.
                let v = start + i as f64 * step;
                (v * 1e12).round() / 1e12
            })
            .collect()
    } else {
        spec.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err(CliError::Usage(format!("grid `{spec}` is empty")));
    }
    Ok(values)
}

pub fn parse_count_grid(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("`{s}` is not a count")))
        })
        .collect()
}

fn num(s: &str) -> Result<f64, CliError> {
    f64::from_str(s.trim()).map_err(|_| CliError::Usage(format!("`{s}` is not a number")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_are_inclusive() {
        assert_eq!(parse_real_grid("0:0.3:0.1").unwrap(), vec![0.0, 0.1, 0.2, 0.3]);
        assert_eq!(parse_real_grid("0:0.99:0.01").unwrap(), default_p_minus_grid());
        assert_eq!(parse_real_grid("0.5:0.5:0.1").unwrap(), vec![0.5]);
    }

    #[test]
    fn lists_and_errors() {
        assert_eq!(parse_real_grid("0.001, 0.01").unwrap(), vec![0.001, 0.01]);
        assert_eq!(parse_count_grid("10,1000").unwrap(), vec![10, 1000]);
        assert!(parse_real_grid("0:1").is_err());
        assert!(parse_real_grid("1:0:0.1").is_err());
        assert!(parse_real_grid("0:1:0").is_err());
        assert!(parse_real_grid("a,b").is_err());
        assert!(parse_count_grid("1,x").is_err());
    }
}

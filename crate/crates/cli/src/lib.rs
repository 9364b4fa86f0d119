//! Harness behind the `mlein` binary: point reports, error tables, curves
//! and the identity self-test.

pub mod curves;
pub mod report;
pub mod selftest;
pub mod tables;

use mlein_core::error::Error;
use mlein_core::series::{precision_digits_from_env, DEFAULT_ORACLE_DIGITS};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// 2 for usage errors, 3 for numeric and domain errors, 4 for
    /// convergence or precision failures, 1 for i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) => 2,
            HarnessError::Core(e) => e.exit_code(),
            HarnessError::Io(_) => 1,
        }
    }
}

/// Parses a real given as a decimal or as `p/q`.
pub fn parse_real(s: &str) -> Result<f64, HarnessError> {
    let bad = || HarnessError::Usage(format!("cannot parse {s:?} as a number or p/q"));
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            p / q
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// Oracle digits: the flag if given, else `MLEIN_PRECISION_DIGITS`, else 50.
pub fn resolve_digits(flag: Option<u32>) -> u32 {
    flag.unwrap_or_else(precision_digits_from_env)
}

pub const DEFAULT_DIGITS: u32 = DEFAULT_ORACLE_DIGITS;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_and_decimal() {
        assert_eq!(parse_real("4/3").unwrap(), 4.0 / 3.0);
        assert_eq!(parse_real("0.25").unwrap(), 0.25);
        assert_eq!(parse_real(" 1 / 4 ").unwrap(), 0.25);
        assert!(parse_real("1/0").is_err());
        assert!(parse_real("x").is_err());
        assert!(parse_real("nan").is_err());
    }

    #[test]
    fn flag_beats_default() {
        assert_eq!(resolve_digits(Some(80)), 80);
    }
}

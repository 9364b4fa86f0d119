//! Curve data on a uniform x grid.

use std::fmt::Write as _;
use std::str::FromStr;

use mlein_core::asym::leading_approximation;
use mlein_core::error::{Error, Result};
use mlein_core::series::{series_eval, ExpansionParams, FunctionId};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::HarnessError;

/// Largest x accepted for series curves.
pub const SERIES_X_MAX: f64 = 50.0;
const CURVE_TOL: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveSource {
    Series,
    AsymLeading,
}

impl FromStr for CurveSource {
    type Err = HarnessError;
    fn from_str(s: &str) -> std::result::Result<Self, HarnessError> {
        match s {
            "series" => Ok(CurveSource::Series),
            "asym-leading" => Ok(CurveSource::AsymLeading),
            _ => Err(HarnessError::Usage(format!(
                "unknown source {s:?}; expected series or asym-leading"
            ))),
        }
    }
}

impl std::fmt::Display for CurveSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CurveSource::Series => "series",
            CurveSource::AsymLeading => "asym-leading",
        })
    }
}

/// Points x0, x0+step, ... up to x1 (inclusive within rounding).
pub fn grid(x0: f64, x1: f64, step: f64) -> Result<Vec<f64>> {
    if !(x0.is_finite() && x1.is_finite() && step.is_finite()) || step <= 0.0 || x1 < x0 {
        return Err(Error::Domain(format!("bad range [{x0}, {x1}] step {step}")));
    }
    let n = ((x1 - x0) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| x0 + i as f64 * step).collect())
}

pub fn curve(
    f: FunctionId,
    alpha: f64,
    beta: f64,
    xs: &[f64],
    source: CurveSource,
) -> Result<Vec<(f64, f64)>> {
    let p = ExpansionParams::ein(alpha, beta)?;
    if f == FunctionId::F {
        return Err(Error::Domain("curves are defined for ein, sin and cin".into()));
    }
    match source {
        CurveSource::Series => {
            if let Some(&x) = xs.iter().find(|&&x| x.abs() > SERIES_X_MAX) {
                return Err(Error::Domain(format!("series curves need |x| <= {SERIES_X_MAX}, got {x}")));
            }
        }
        CurveSource::AsymLeading => {
            if let Some(&x) = xs.iter().find(|&&x| x <= 0.0) {
                return Err(Error::Domain(format!("leading approximation needs x > 0, got {x}")));
            }
        }
    }
    xs.par_iter()
        .map(|&x| {
            let z = Complex64::new(x, 0.0);
            let v = match source {
                CurveSource::Series => series_eval(f, &p, z, CURVE_TOL)?.value,
                CurveSource::AsymLeading => leading_approximation(f, &p, z)?,
            };
            Ok((x, v.re))
        })
        .collect()
}

pub fn to_csv(points: &[(f64, f64)]) -> String {
    let mut s = String::from("x,value\n");
    for (x, v) in points {
        let _ = writeln!(s, "{x:.16e},{v:.16e}");
    }
    s
}

/// File name for one curve, e.g. `ein_alpha0.5_series.csv`.
pub fn file_name(f: FunctionId, alpha_label: &str, source: CurveSource) -> String {
    let a: String = alpha_label.chars().map(|c| if c == '/' { '_' } else { c }).collect();
    format!("{f}_alpha{a}_{source}.csv")
}

//! Single-point evaluation and its report.

use std::fmt::Write as _;
use std::str::FromStr;

use mlein_core::asym::{
    cin_asymptotic, ein_asymptotic_with, f_chi_asymptotic, sin_asymptotic, AsymOptions,
    AsymValue, Branch,
};
use mlein_core::error::Result;
use mlein_core::series::{oracle_eval_digits, ExpansionParams, FunctionId};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Asym,
    Both,
}

impl FromStr for Method {
    type Err = HarnessError;
    fn from_str(s: &str) -> std::result::Result<Self, HarnessError> {
        match s {
            "series" => Ok(Method::Series),
            "asym" => Ok(Method::Asym),
            "both" => Ok(Method::Both),
            _ => Err(HarnessError::Usage(format!("unknown method {s:?}"))),
        }
    }
}

/// Series value, asymptotic value and their agreement at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub series_value: Option<Complex64>,
    pub asym_value: Option<Complex64>,
    pub abs_rel_error: Option<f64>,
    pub branch: Option<Branch>,
    pub trunc_indices: Vec<usize>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub omitted_magnitudes: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalRequest {
    pub function: FunctionId,
    pub alpha: f64,
    pub beta: f64,
    /// γ, used by `f` only.
    pub gamma: f64,
    pub z: Complex64,
    pub method: Method,
    pub stokes: bool,
    pub digits: u32,
}

impl EvalRequest {
    pub fn params(&self) -> Result<ExpansionParams> {
        match self.function {
            FunctionId::F => ExpansionParams::new(self.alpha, self.beta, self.gamma),
            _ => ExpansionParams::ein(self.alpha, self.beta),
        }
    }
}

/// Asymptotic value of the requested function.
pub fn asymptotic(
    f: FunctionId,
    p: &ExpansionParams,
    z: Complex64,
    stokes: bool,
) -> Result<AsymValue> {
    let mut v = match f {
        FunctionId::Ein => return ein_asymptotic_with(p, z, AsymOptions { stokes }),
        FunctionId::Sin => sin_asymptotic(p, z)?,
        FunctionId::Cin => cin_asymptotic(p, z)?,
        FunctionId::F => f_chi_asymptotic(p, z)?,
    };
    if stokes {
        v.warnings.push(format!("stokes option applies to ein only; ignored for {f}"));
    }
    Ok(v)
}

pub fn relative_error(approx: Complex64, exact: Complex64) -> Option<f64> {
    let d = exact.norm();
    (d > 0.0).then(|| (approx - exact).norm() / d)
}

pub fn evaluate(req: &EvalRequest) -> Result<EvalReport> {
    let p = req.params()?;
    let series_value = match req.method {
        Method::Series | Method::Both => {
            Some(oracle_eval_digits(req.function, &p, req.z, req.digits)?)
        }
        Method::Asym => None,
    };
    let asym = match req.method {
        Method::Asym | Method::Both => Some(asymptotic(req.function, &p, req.z, req.stokes)?),
        Method::Series => None,
    };
    let abs_rel_error = match (&asym, series_value) {
        (Some(a), Some(s)) => relative_error(a.value, s),
        _ => None,
    };
    Ok(match asym {
        Some(a) => EvalReport {
            series_value,
            asym_value: Some(a.value),
            abs_rel_error,
            branch: Some(a.branch),
            trunc_indices: a.trunc_indices,
            warnings: a.warnings,
            omitted_magnitudes: a.omitted_magnitudes,
        },
        None => EvalReport {
            series_value,
            asym_value: None,
            abs_rel_error: None,
            branch: None,
            trunc_indices: Vec::new(),
            warnings: Vec::new(),
            omitted_magnitudes: Vec::new(),
        },
    })
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.16e}", z.re)
    } else {
        format!("{:.16e} {} {:.16e}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
    }
}

impl EvalReport {
    /// Human-readable multi-line summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(v) = self.series_value {
            let _ = writeln!(s, "series:        {}", fmt_complex(v));
        }
        if let Some(v) = self.asym_value {
            let _ = writeln!(s, "asymptotic:    {}", fmt_complex(v));
        }
        if let Some(e) = self.abs_rel_error {
            let _ = writeln!(s, "rel. error:    {e:.4e}");
        }
        if let Some(b) = self.branch {
            let _ = writeln!(s, "branch:        {b}");
            let idx: Vec<String> = self.trunc_indices.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(s, "truncation:    [{}]", idx.join(", "));
            let om: Vec<String> = self.omitted_magnitudes.iter().map(|m| format!("{m:.3e}")).collect();
            let _ = writeln!(s, "omitted:       [{}]", om.join(", "));
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning:       {w}");
        }
        s
    }
}

//! Identity suite run by `mlein selftest`.

use mlein_core::error::Result;
use mlein_core::expint::e1;
use mlein_core::gamma::EULER_GAMMA;
use mlein_core::series::{ein_series, oracle_eval_digits, sin_series, ExpansionParams, FunctionId};
use num_complex::Complex64;

use crate::report::relative_error;

const TOL: f64 = 1e-16;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub worst: f64,
    pub bound: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.worst <= self.bound
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn worst(errs: impl IntoIterator<Item = Option<f64>>) -> f64 {
    errs.into_iter()
        .map(|e| e.unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

/// Ein_{1,1}(x) = ln x + γ + E₁(x).
pub fn ein_exponential_integral() -> Result<Check> {
    let p = ExpansionParams::ein(1.0, 1.0)?;
    let mut errs = Vec::new();
    for x in [1.0f64, 2.0, 5.0, 10.0, 20.0] {
        let v = ein_series(&p, re(x), TOL)?.value;
        errs.push(relative_error(v, re(x.ln() + EULER_GAMMA + e1(x))));
    }
    Ok(Check { name: "Ein_{1,1}(x) = ln x + gamma + E1(x)".into(), worst: worst(errs), bound: 1e-12 })
}

/// Sin_{α,β}(x) = Ein_{2α,β−α}(x), standard series against the extended oracle.
pub fn sin_ein_relation(digits: u32) -> Result<Check> {
    let mut errs = Vec::new();
    for alpha in [0.25, 1.0 / 3.0, 0.5] {
        for beta in [1.0, 4.0 / 3.0, 2.0] {
            let ps = ExpansionParams::ein(alpha, beta)?;
            let pe = ExpansionParams::ein(2.0 * alpha, beta - alpha)?;
            for x in [1.0, 5.0, 10.0] {
                let s = sin_series(&ps, re(x), TOL)?.value;
                let e = oracle_eval_digits(FunctionId::Ein, &pe, re(x), digits)?;
                errs.push(relative_error(s, e));
            }
        }
    }
    Ok(Check { name: "Sin_{a,b}(x) = Ein_{2a,b-a}(x)".into(), worst: worst(errs), bound: 1e-13 })
}

/// Ein_{2,β}(−x) = −Ein_{2,β}(x).
pub fn ein2_odd() -> Result<Check> {
    let mut errs = Vec::new();
    for beta in [1.0, 4.0 / 3.0, 2.0] {
        let p = ExpansionParams::ein(2.0, beta)?;
        for x in [1.0, 5.0, 10.0] {
            let a = ein_series(&p, re(x), TOL)?.value;
            let b = ein_series(&p, re(-x), TOL)?.value;
            errs.push(relative_error(-b, a));
        }
    }
    Ok(Check { name: "Ein_{2,b}(-x) = -Ein_{2,b}(x)".into(), worst: worst(errs), bound: 1e-13 })
}

pub fn run(digits: u32) -> Result<Vec<Check>> {
    Ok(vec![ein_exponential_integral()?, sin_ein_relation(digits)?, ein2_odd()?])
}

//! Convergent power series for E_{α,β}, Ein_{α,β}, Sin_{α,β}, Cin_{α,β} and
//! the auxiliary function F(χ) = Σ χⁿ / ((αn+γ) Γ(αn+α+β)).
//!
//! Terms are accumulated in [`XFloat`] arithmetic. The working precision is
//! chosen from the requested tolerance plus the number of digits lost to
//! cancellation between the largest term and the sum, so the rounded result
//! is accurate to the tolerance even where the alternating series cancels
//! heavily (Ein at x = 30 loses about thirteen digits).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{extended, ln_abs_recip_gamma, near_nonpositive_integer};
use crate::xfloat::{bits_for_digits, XComplex, XFloat, MAX_PREC};

/// Largest number of series terms before giving up.
pub const MAX_SERIES_TERMS: usize = 1_000_000;
/// Gamma arguments this close to a pole produce an exactly zero term.
pub const POLE_TOLERANCE: f64 = 1e-12;
/// Default oracle working precision in decimal digits.
pub const DEFAULT_ORACLE_DIGITS: u32 = 50;
/// Digits the oracle must retain after cancellation.
pub const ORACLE_GUARANTEED_DIGITS: u32 = 25;
/// Environment variable overriding the oracle precision.
pub const PRECISION_ENV: &str = "MLEIN_PRECISION_DIGITS";

/// Parameters (α, β, γ) of one family member.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma_param: f64,
}

impl ExpansionParams {
    pub fn new(alpha: f64, beta: f64, gamma_param: f64) -> Result<Self> {
        let p = ExpansionParams { alpha, beta, gamma_param };
        p.validate()?;
        Ok(p)
    }

    /// Parameters of Ein_{α,β} and Sin_{α,β} (γ = 1).
    pub fn ein(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 1.0)
    }

    /// Parameters of Cin_{α,β} (γ = 1 + α).
    pub fn cin(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 1.0 + alpha)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta.is_finite() && self.gamma_param.is_finite()) {
            return Err(Error::NonFinite(format!("{self:?}")));
        }
        if self.alpha <= 0.0 {
            return Err(Error::Domain(format!("alpha must be positive, got {}", self.alpha)));
        }
        if self.gamma_param <= 0.0 {
            return Err(Error::Domain(format!(
                "gamma_param must be positive, got {}",
                self.gamma_param
            )));
        }
        Ok(())
    }
}

/// Partial sum with truncation bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSum {
    pub value: Complex64,
    pub terms_used: usize,
    pub omitted_magnitude: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionId {
    Ein,
    Sin,
    Cin,
    F,
}

impl std::str::FromStr for FunctionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ein" => Ok(FunctionId::Ein),
            "sin" => Ok(FunctionId::Sin),
            "cin" => Ok(FunctionId::Cin),
            "f" => Ok(FunctionId::F),
            _ => Err(Error::Domain(format!("unknown function id {s:?}"))),
        }
    }
}

impl std::fmt::Display for FunctionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FunctionId::Ein => "ein",
            FunctionId::Sin => "sin",
            FunctionId::Cin => "cin",
            FunctionId::F => "f",
        };
        f.write_str(s)
    }
}

/// Principal argument in (−π, π]; a negative-zero imaginary part counts as +0.
pub fn principal_arg(z: Complex64) -> f64 {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    im.atan2(z.re)
}

/// Rejects non-finite complex input.
pub fn check_point(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{z}")))
    }
}

/// term_n = s^n wⁿ rgamma(step·n + offset) / (step·n + denom), w = z^w_power,
/// and the sum is multiplied by z^pre_power.
#[derive(Clone, Copy, Debug)]
struct Shape {
    step: f64,
    offset: f64,
    denom: Option<f64>,
    w_power: f64,
    alternating: bool,
    pre_power: f64,
}

impl Shape {
    fn of(f: FunctionId, p: &ExpansionParams) -> Shape {
        let (a, b) = (p.alpha, p.beta);
        match f {
            FunctionId::Ein => Shape {
                step: a,
                offset: a + b,
                denom: Some(1.0),
                w_power: a,
                alternating: true,
                pre_power: 1.0,
            },
            FunctionId::Sin => Shape {
                step: 2.0 * a,
                offset: a + b,
                denom: Some(1.0),
                w_power: 2.0 * a,
                alternating: true,
                pre_power: 1.0,
            },
            FunctionId::Cin => Shape {
                step: 2.0 * a,
                offset: 2.0 * a + b,
                denom: Some(1.0 + a),
                w_power: 2.0 * a,
                alternating: true,
                pre_power: 1.0 + a,
            },
            FunctionId::F => Shape {
                step: a,
                offset: a + b,
                denom: Some(p.gamma_param),
                w_power: 1.0,
                alternating: false,
                pre_power: 0.0,
            },
        }
    }

    fn mittag_leffler(alpha: f64, beta: f64) -> Shape {
        Shape {
            step: alpha,
            offset: beta,
            denom: None,
            w_power: 1.0,
            alternating: false,
            pre_power: 0.0,
        }
    }

    /// ln |term_n| in f64, ignoring the prefactor; −∞ for pole terms.
    fn ln_term(&self, n: usize, ln_abs_z: f64) -> f64 {
        let nf = n as f64;
        let arg = self.step * nf + self.offset;
        if near_nonpositive_integer(arg, POLE_TOLERANCE) {
            return f64::NEG_INFINITY;
        }
        let (lr, _) = ln_abs_recip_gamma(arg);
        let d = self.denom.map_or(0.0, |g| (self.step * nf + g).abs().ln());
        let wz = if n == 0 { 0.0 } else { nf * self.w_power * ln_abs_z };
        wz + lr - d
    }
}

/// Index of the largest term and its natural log magnitude.
fn scan_peak(shape: &Shape, ln_abs_z: f64) -> Result<(usize, f64)> {
    let mut best = (0usize, f64::NEG_INFINITY);
    let mut n = 0usize;
    loop {
        let l = shape.ln_term(n, ln_abs_z);
        if l > best.1 {
            best = (n, l);
        }
        if n > best.0 + 4 && l.is_finite() && l < best.1 - 60.0 {
            return Ok(best);
        }
        n += 1;
        if n >= MAX_SERIES_TERMS {
            return Err(Error::NonConvergence { terms: n });
        }
    }
}

struct RawSum {
    sum: XComplex,
    terms: Vec<XComplex>,
    max_log2: f64,
    omitted_log2: f64,
    terms_used: usize,
}

struct Point {
    ln_abs: XFloat,
    theta: XFloat,
    ln_abs_f64: f64,
}

impl Point {
    fn new(z: Complex64, prec: u32) -> Point {
        let re = XFloat::from_f64(z.re, prec);
        let im = XFloat::from_f64(z.im, prec);
        let ln_abs = re.mul(&re).add(&im.mul(&im)).ln().mul_pow2(-1);
        let theta = XFloat::from_f64(principal_arg(z), prec);
        let ln_abs_f64 = ln_abs.to_f64();
        Point { ln_abs, theta, ln_abs_f64 }
    }

    /// z^p on the principal branch.
    fn power(&self, p: f64) -> XComplex {
        let px = XFloat::from_f64(p, self.ln_abs.prec());
        XComplex::from_log_polar(&self.ln_abs.mul(&px), &self.theta.mul(&px))
    }
}

fn coefficient(shape: &Shape, n: usize, prec: u32) -> Result<XFloat> {
    let nf = n as f64;
    if near_nonpositive_integer(shape.step * nf + shape.offset, POLE_TOLERANCE) {
        return Ok(XFloat::zero(prec));
    }
    let step_n = XFloat::from_f64(shape.step, prec).mul_i64(n as i64);
    let arg = step_n.add(&XFloat::from_f64(shape.offset, prec));
    let rg = extended::recip_gamma(&arg)?;
    Ok(match shape.denom {
        Some(g) => rg.div(&step_n.add(&XFloat::from_f64(g, prec))),
        None => rg,
    })
}

/// Sums until three consecutive terms past the peak fall below `tol` times
/// the running sum.
fn accumulate(
    shape: &Shape,
    pt: &Point,
    prec: u32,
    tol_log2: f64,
    n_peak: usize,
    keep: bool,
) -> Result<RawSum> {
    let mut w = pt.power(shape.w_power);
    if shape.alternating {
        w = w.neg();
    }
    let mut wn = XComplex::from_real(XFloat::one(prec));
    let mut sum = XComplex::zero(prec);
    let mut terms = Vec::new();
    let mut max_log2 = f64::NEG_INFINITY;
    let mut small_run = 0;
    let mut n = 0usize;
    loop {
        if n >= MAX_SERIES_TERMS {
            return Err(Error::NonConvergence { terms: n });
        }
        let t = wn.scale(&coefficient(shape, n, prec)?);
        let tl = t.log2_abs();
        max_log2 = max_log2.max(tl);
        sum = sum.add(&t);
        if keep {
            terms.push(t);
        }
        wn = wn.mul(&w);
        n += 1;
        if n > n_peak + 1 {
            let sl = sum.log2_abs();
            let floor = (sl + tol_log2).max(-996.0);
            if sl.is_finite() && tl < floor {
                small_run += 1;
            } else {
                small_run = 0;
            }
            if small_run == 3 {
                let next = wn.scale(&coefficient(shape, n, prec)?);
                return Ok(RawSum {
                    sum,
                    terms,
                    max_log2,
                    omitted_log2: next.log2_abs(),
                    terms_used: n,
                });
            }
        }
    }
}

fn pairwise(terms: &[XComplex], prec: u32) -> XComplex {
    match terms.len() {
        0 => XComplex::zero(prec),
        1 => terms[0].clone(),
        n => pairwise(&terms[..n / 2], prec).add(&pairwise(&terms[n / 2..], prec)),
    }
}

fn check_tol(rel_tol: f64) -> Result<()> {
    if !(1e-30..=1e-6).contains(&rel_tol) {
        return Err(Error::Domain(format!("rel_tol must lie in [1e-30, 1e-6], got {rel_tol}")));
    }
    Ok(())
}

/// Value of the series at z = 0.
fn value_at_zero(shape: &Shape) -> Result<TruncatedSum> {
    if shape.pre_power > 0.0 {
        return Ok(TruncatedSum { value: Complex64::new(0.0, 0.0), terms_used: 1, omitted_magnitude: 0.0 });
    }
    let c = coefficient(shape, 0, 128)?.to_f64();
    Ok(TruncatedSum { value: Complex64::new(c, 0.0), terms_used: 1, omitted_magnitude: 0.0 })
}

const LOG2_10: f64 = std::f64::consts::LOG2_10;

fn evaluate(shape: Shape, z: Complex64, rel_tol: f64) -> Result<TruncatedSum> {
    check_point(z)?;
    check_tol(rel_tol)?;
    if z == Complex64::new(0.0, 0.0) {
        return value_at_zero(&shape);
    }
    let base_digits = (-rel_tol.log10()).ceil().max(17.0) + 6.0;
    let probe = Point::new(z, 128);
    let (n_peak, ln_max) = scan_peak(&shape, probe.ln_abs_f64)?;
    let ln_first = shape.ln_term(0, probe.ln_abs_f64);
    let mut lost = ((ln_max - ln_first.min(0.0).max(ln_max - 700.0)) / std::f64::consts::LN_10).max(0.0) + 2.0;
    for _ in 0..4 {
        let digits = base_digits + lost;
        let prec = bits_for_digits(digits.ceil() as u32);
        if prec > MAX_PREC {
            return Err(Error::PrecisionInsufficient(format!("{digits:.0} digits needed")));
        }
        let pt = Point::new(z, prec);
        let raw = accumulate(&shape, &pt, prec, rel_tol.log2(), n_peak, false)?;
        let sl = raw.sum.log2_abs();
        let actual = if sl.is_finite() { (raw.max_log2 - sl) / LOG2_10 } else { 0.0 };
        if actual <= lost + 1.0 || !sl.is_finite() {
            let pre = if shape.pre_power != 0.0 {
                pt.power(shape.pre_power)
            } else {
                XComplex::from_real(XFloat::one(prec))
            };
            let value = raw.sum.mul(&pre).to_c64();
            let pre_log2 = pre.log2_abs();
            return Ok(TruncatedSum {
                value,
                terms_used: raw.terms_used.max(1),
                omitted_magnitude: (raw.omitted_log2 + pre_log2).exp2(),
            });
        }
        lost = actual + 2.0;
    }
    Err(Error::PrecisionInsufficient("adaptive precision did not settle".into()))
}

/// E_{α,β}(z) = Σ zⁿ / Γ(αn+β).
pub fn mittag_leffler(alpha: f64, beta: f64, z: Complex64, rel_tol: f64) -> Result<TruncatedSum> {
    ExpansionParams::new(alpha, beta, 1.0)?;
    evaluate(Shape::mittag_leffler(alpha, beta), z, rel_tol)
}

/// Ein_{α,β}(z) = z Σ (−1)ⁿ z^{αn} / ((αn+1) Γ(αn+α+β)).
pub fn ein_series(p: &ExpansionParams, z: Complex64, rel_tol: f64) -> Result<TruncatedSum> {
    p.validate()?;
    evaluate(Shape::of(FunctionId::Ein, p), z, rel_tol)
}

/// Sin_{α,β}(z) = z Σ (−1)ⁿ z^{2αn} / ((2αn+1) Γ(2αn+α+β)).
pub fn sin_series(p: &ExpansionParams, z: Complex64, rel_tol: f64) -> Result<TruncatedSum> {
    p.validate()?;
    evaluate(Shape::of(FunctionId::Sin, p), z, rel_tol)
}

/// Cin_{α,β}(z) = z^{1+α} Σ (−1)ⁿ z^{2αn} / ((2αn+α+1) Γ(2αn+2α+β)).
pub fn cin_series(p: &ExpansionParams, z: Complex64, rel_tol: f64) -> Result<TruncatedSum> {
    p.validate()?;
    evaluate(Shape::of(FunctionId::Cin, p), z, rel_tol)
}

/// F(χ) = Σ χⁿ / ((αn+γ) Γ(αn+α+β)).
pub fn f_series(p: &ExpansionParams, chi: Complex64, rel_tol: f64) -> Result<TruncatedSum> {
    p.validate()?;
    evaluate(Shape::of(FunctionId::F, p), chi, rel_tol)
}

/// Series evaluation by function id.
pub fn series_eval(f: FunctionId, p: &ExpansionParams, z: Complex64, rel_tol: f64) -> Result<TruncatedSum> {
    match f {
        FunctionId::Ein => ein_series(p, z, rel_tol),
        FunctionId::Sin => sin_series(p, z, rel_tol),
        FunctionId::Cin => cin_series(p, z, rel_tol),
        FunctionId::F => f_series(p, z, rel_tol),
    }
}

/// Oracle precision: `MLEIN_PRECISION_DIGITS` if set and valid, else 50.
pub fn precision_digits_from_env() -> u32 {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .unwrap_or(DEFAULT_ORACLE_DIGITS)
}

/// Extended-precision reference value at the precision from the environment.
pub fn oracle_eval(f: FunctionId, p: &ExpansionParams, z: Complex64) -> Result<Complex64> {
    oracle_eval_digits(f, p, z, precision_digits_from_env())
}

/// Extended-precision reference value at `digits` working digits.
///
/// The series is summed until the omitted terms fall below the working
/// precision, then summed again in pairwise order; the two sums must agree to
/// 25 digits and the cancellation must leave at least 25 digits.
pub fn oracle_eval_digits(
    f: FunctionId,
    p: &ExpansionParams,
    z: Complex64,
    digits: u32,
) -> Result<Complex64> {
    p.validate()?;
    check_point(z)?;
    if digits < DEFAULT_ORACLE_DIGITS {
        return Err(Error::Domain(format!("oracle needs at least {DEFAULT_ORACLE_DIGITS} digits, got {digits}")));
    }
    let prec = bits_for_digits(digits);
    if prec > MAX_PREC {
        return Err(Error::Domain(format!("{digits} digits exceeds the supported maximum")));
    }
    let shape = Shape::of(f, p);
    if z == Complex64::new(0.0, 0.0) {
        return Ok(value_at_zero(&shape)?.value);
    }
    let pt = Point::new(z, prec);
    let (n_peak, _) = scan_peak(&shape, pt.ln_abs_f64)?;
    let tol_log2 = -((digits as f64) + 5.0) * LOG2_10;
    let raw = accumulate(&shape, &pt, prec, tol_log2, n_peak, true)?;
    let sl = raw.sum.log2_abs();
    if !sl.is_finite() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let lost = (raw.max_log2 - sl) / LOG2_10;
    let kept = digits as f64 - lost;
    if kept < ORACLE_GUARANTEED_DIGITS as f64 {
        return Err(Error::PrecisionInsufficient(format!(
            "cancellation costs {lost:.1} of {digits} digits"
        )));
    }
    let pw = pairwise(&raw.terms, prec);
    let diff = raw.sum.add(&pw.neg()).log2_abs();
    if diff - sl > -(ORACLE_GUARANTEED_DIGITS as f64) * LOG2_10 {
        return Err(Error::PrecisionInsufficient(
            "forward and pairwise summation disagree".into(),
        ));
    }
    let pre = if shape.pre_power != 0.0 {
        pt.power(shape.pre_power)
    } else {
        XComplex::from_real(XFloat::one(prec))
    };
    Ok(raw.sum.mul(&pre).to_c64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expint::e1;
    use crate::gamma::EULER_GAMMA;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-16;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn mittag_leffler_elementary() {
        let e = mittag_leffler(1.0, 1.0, re(1.0), TOL).unwrap();
        assert!(rel(e.value, re(std::f64::consts::E)) < 1e-15);
        let c = mittag_leffler(2.0, 1.0, re(-PI * PI), TOL).unwrap();
        assert!(rel(c.value, re(-1.0)) < 1e-15);
    }

    #[test]
    fn mittag_leffler_half_order() {
        // e·erfc(1), 50-digit mpmath
        let want = 0.427_583_576_155_807;
        let v = mittag_leffler(0.5, 1.0, re(-1.0), TOL).unwrap();
        assert!(rel(v.value, re(want)) < 1e-15);
        assert!(v.omitted_magnitude <= TOL * want);
    }

    #[test]
    fn integrals_vanish_at_origin() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        for f in [ein_series, sin_series, cin_series] {
            let v = f(&p, re(0.0), TOL).unwrap();
            assert_eq!(v.value, re(0.0));
            assert!(v.terms_used >= 1);
        }
    }

    #[test]
    fn ein_identity_with_e1() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        for x in [1.0, 5.0, 10.0] {
            let v = ein_series(&p, re(x), TOL).unwrap().value;
            let want = x.ln() + EULER_GAMMA + e1(x);
            assert!(rel(v, re(want)) < 1e-14, "x={x}");
        }
    }

    #[test]
    fn ein_half_order_reference() {
        // 80-digit mpmath summation, cross-checked by quadrature of the integrand
        let p = ExpansionParams::ein(0.5, 1.0).unwrap();
        let v = ein_series(&p, re(10.0), TOL).unwrap().value;
        assert!(rel(v, re(3.891_291_763_886_244)) < 1e-15);
    }

    #[test]
    fn classical_sine_and_cosine_integrals() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        let si = sin_series(&p, re(PI), TOL).unwrap().value;
        assert!(rel(si, re(1.851_937_051_982_466_2)) < 1e-15);
        let cin = cin_series(&ExpansionParams::cin(1.0, 1.0).unwrap(), re(PI), TOL).unwrap().value;
        assert!(rel(cin, re(1.648_277_638_704_507_5)) < 1e-15);
    }

    #[test]
    fn cin_third_order_reference() {
        let p = ExpansionParams::cin(1.0 / 3.0, 4.0 / 3.0).unwrap();
        let v = cin_series(&p, re(10.0), TOL).unwrap().value;
        assert!(rel(v, re(5.112_761_228_118_253)) < 1e-15);
    }

    #[test]
    fn sin_reduces_to_ein() {
        let s = sin_series(&ExpansionParams::ein(0.5, 4.0 / 3.0).unwrap(), re(10.0), TOL).unwrap();
        let e = ein_series(&ExpansionParams::ein(1.0, 4.0 / 3.0 - 0.5).unwrap(), re(10.0), TOL).unwrap();
        assert!(rel(s.value, e.value) < 1e-15);
    }

    #[test]
    fn negative_real_axis_uses_upper_branch() {
        let p = ExpansionParams::ein(0.5, 1.0).unwrap();
        let a = ein_series(&p, Complex64::new(-4.0, 0.0), TOL).unwrap().value;
        let b = ein_series(&p, Complex64::new(-4.0, -0.0), TOL).unwrap().value;
        assert_eq!(a, b);
        assert!(a.im != 0.0);
    }

    #[test]
    fn oracle_matches_identity() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        let v = oracle_eval_digits(FunctionId::Ein, &p, re(10.0), 50).unwrap();
        let want = 10f64.ln() + EULER_GAMMA + 4.156_968_929_685_324e-6;
        assert!(rel(v, re(want)) < 1e-15);
    }

    #[test]
    fn oracle_cin_half_order() {
        let p = ExpansionParams::cin(0.5, 4.0 / 3.0).unwrap();
        let v = oracle_eval_digits(FunctionId::Cin, &p, re(20.0), 50).unwrap();
        assert!(rel(v, re(7.401_948_663_612_404)) < 1e-15);
    }

    #[test]
    fn oracle_reports_precision_shortfall() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        let r = oracle_eval_digits(FunctionId::Ein, &p, re(80.0), 50);
        assert!(matches!(r, Err(Error::PrecisionInsufficient(_))));
    }

    #[test]
    fn rejects_bad_tolerance_and_nan() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        assert!(ein_series(&p, re(1.0), 1e-3).is_err());
        assert!(ein_series(&p, Complex64::new(f64::NAN, 0.0), TOL).is_err());
    }
}

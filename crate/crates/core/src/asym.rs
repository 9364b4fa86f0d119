//! Large-|z| asymptotic expansions of F(χ), Ein_{α,β}, Sin_{α,β} and Cin_{α,β}.
//!
//! Every family member is written as `z^g · F(χ)` with F-level parameters
//! `(a, b, g)`:
//!
//! | function | a  | b   | g   |
//! |----------|----|-----|-----|
//! | Ein      | α  | β   | 1   |
//! | Sin      | 2α | β−α | 1   |
//! | Cin      | 2α | β   | 1+α |
//!
//! The algebraic series H and the exponential series E are generated from
//! `ln z` in log space (so 1/Γ at large negative arguments cannot overflow)
//! and are cut at their least term by [`optimal_truncate`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{
    cos_pi, digamma, ln_abs_recip_gamma, near_nonpositive_integer, pochhammer, recip_gamma,
    sin_pi,
};
use crate::series::{check_point, principal_arg, ExpansionParams, TruncatedSum, POLE_TOLERANCE};

/// α counts as γ/m when closer than this.
pub const LOG_CASE_TOL: f64 = 1e-10;
/// Inside this distance of a log case the regular branch is flagged as ill-conditioned.
pub const CONDITIONING_TOL: f64 = 1e-6;
/// Largest log-case index m considered.
pub const MAX_LOG_M: u32 = 200;
pub const MAX_ALGEBRAIC_TERMS: usize = 200;
pub const MAX_EXPONENTIAL_TERMS: usize = 100;
/// Relative margin a later term needs to displace an earlier least term.
pub const TIE_TOLERANCE: f64 = 1e-10;
/// Largest Re X accepted in e^X.
pub const OVERFLOW_EXPONENT: f64 = 700.0;
/// Smallest |z| accepted by the asymptotic wrappers.
pub const MIN_MODULUS: f64 = 3.0;
/// Parameters this close to a special value are treated as equal to it.
const PARAM_EPS: f64 = 1e-12;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Wright-function constants of F(χ).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WrightConstants {
    pub kappa: f64,
    pub h: f64,
    pub theta_upper: f64,
    pub theta_prime: f64,
    pub a0: f64,
    c_base: f64,
}

impl WrightConstants {
    pub fn new(p: &ExpansionParams) -> Result<Self> {
        p.validate()?;
        let theta_upper = -p.alpha - p.beta;
        Ok(WrightConstants {
            kappa: p.alpha,
            h: p.alpha.powf(-p.alpha),
            theta_upper,
            theta_prime: 1.0 - theta_upper,
            a0: 1.0 / p.alpha,
            c_base: p.alpha + p.beta - p.gamma_param,
        })
    }

    /// Coefficient c_j = (α+β−γ)_j of the exponential series.
    pub fn c(&self, j: u32) -> f64 {
        pochhammer(self.c_base, j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    AlgebraicOnly,
    AlgebraicPlusExponential,
    AlphaEqualsTwo,
    SubTwoThirds,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorClass {
    pub theta0: f64,
    pub regime: Regime,
}

/// Sector classification of Ein_{α,β}(z) for 0 ≤ arg z ≤ π.
pub fn classify_sector(alpha: f64, arg_z: f64) -> SectorClass {
    let theta0 = PI * (2.0 - alpha) / (2.0 * alpha);
    let regime = if (alpha - 2.0).abs() < PARAM_EPS {
        Regime::AlphaEqualsTwo
    } else if alpha < 2.0 / 3.0 {
        Regime::SubTwoThirds
    } else if arg_z >= theta0 - PARAM_EPS {
        Regime::AlgebraicPlusExponential
    } else {
        Regime::AlgebraicOnly
    };
    let theta0 = if regime == Regime::AlphaEqualsTwo { 0.0 } else { theta0 };
    SectorClass { theta0, regime }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogCaseTag {
    pub is_log_case: bool,
    pub m: Option<u32>,
}

impl LogCaseTag {
    const REGULAR: LogCaseTag = LogCaseTag { is_log_case: false, m: None };

    /// Log case of the F-level parameters: α = γ/m.
    pub fn of(p: &ExpansionParams) -> LogCaseTag {
        match nearest_log_case(p) {
            Some((m, d)) if d < LOG_CASE_TOL => LogCaseTag { is_log_case: true, m: Some(m) },
            _ => Self::REGULAR,
        }
    }
}

/// Nearest m with α ≈ γ/m, and the distance |α − γ/m|.
fn nearest_log_case(p: &ExpansionParams) -> Option<(u32, f64)> {
    let r = p.gamma_param / p.alpha;
    let m = r.round();
    if m < 1.0 || m > MAX_LOG_M as f64 {
        return None;
    }
    Some((m as u32, (p.alpha - p.gamma_param / m).abs()))
}

fn conditioning_warning(p: &ExpansionParams) -> Option<String> {
    match nearest_log_case(p) {
        Some((m, d)) if (LOG_CASE_TOL..CONDITIONING_TOL).contains(&d) => Some(format!(
            "alpha within {d:.1e} of the log case m={m}; regular branch is ill-conditioned"
        )),
        _ => None,
    }
}

/// Index of the least nonzero magnitude (earliest on ties).
///
/// Zero entries are skipped; an all-zero input yields 0. A later entry must
/// be smaller by more than [`TIE_TOLERANCE`] relative to replace the current
/// least term, so strictly decreasing input returns the last index.
pub fn optimal_truncate(mags: &[f64]) -> usize {
    let mut best: Option<usize> = None;
    for (i, &m) in mags.iter().enumerate() {
        if m == 0.0 || !m.is_finite() {
            continue;
        }
        match best {
            None => best = Some(i),
            Some(b) if m < mags[b] * (1.0 - TIE_TOLERANCE) => best = Some(i),
            _ => {}
        }
    }
    best.unwrap_or(0)
}

/// Compensated (Neumaier) complex sum.
fn compensated_sum<'a>(terms: impl IntoIterator<Item = &'a Complex64>) -> Complex64 {
    fn step(s: &mut f64, c: &mut f64, x: f64) {
        let t = *s + x;
        if s.abs() >= x.abs() {
            *c += (*s - t) + x;
        } else {
            *c += (x - t) + *s;
        }
        *s = t;
    }
    let (mut sr, mut cr, mut si, mut ci) = (0.0, 0.0, 0.0, 0.0);
    for t in terms {
        step(&mut sr, &mut cr, t.re);
        step(&mut si, &mut ci, t.im);
    }
    Complex64::new(sr + cr, si + ci)
}

/// Sums `terms` up to (not including) the least term.
///
/// If the least term is the last nonzero entry and only exact zeros follow,
/// the series terminates and everything is summed. At least the leading
/// nonzero term is always kept.
pub fn truncated_sum(terms: &[Complex64]) -> TruncatedSum {
    let mags: Vec<f64> = terms.iter().map(|t| t.norm()).collect();
    let nonzero: Vec<usize> = (0..mags.len()).filter(|&i| mags[i] != 0.0).collect();
    let Some(&last_nz) = nonzero.last() else {
        return TruncatedSum {
            value: Complex64::new(0.0, 0.0),
            terms_used: terms.len().max(1),
            omitted_magnitude: 0.0,
        };
    };
    let idx = optimal_truncate(&mags);
    let (used, omitted) = if idx == last_nz && idx + 1 < terms.len() {
        (terms.len(), 0.0)
    } else if idx == nonzero[0] {
        let next = nonzero.get(1).map_or(0.0, |&k| mags[k]);
        let used = nonzero.get(1).copied().unwrap_or(terms.len());
        (used, next)
    } else {
        (idx, mags[idx])
    };
    TruncatedSum {
        value: compensated_sum(&terms[..used]),
        terms_used: used.max(1),
        omitted_magnitude: omitted,
    }
}

/// 1/Γ(x) in log form, zero within [`POLE_TOLERANCE`] of a pole.
fn ln_rg(x: f64) -> (f64, f64) {
    if near_nonpositive_integer(x, POLE_TOLERANCE) {
        (f64::NEG_INFINITY, 0.0)
    } else {
        ln_abs_recip_gamma(x)
    }
}

fn rg(x: f64) -> f64 {
    if near_nonpositive_integer(x, POLE_TOLERANCE) {
        0.0
    } else {
        recip_gamma(x)
    }
}

/// ψ(x) extended to negative non-integers by reflection.
fn digamma_any(x: f64) -> Result<f64> {
    if x > 0.0 {
        digamma(x)
    } else {
        Ok(digamma(1.0 - x)? - PI * cos_pi(x) / sin_pi(x))
    }
}

/// Variable of the algebraic series, with an exact real value when it lies
/// on the positive axis (powers then come from `powf`).
#[derive(Clone, Copy, Debug)]
struct Base {
    ln: Complex64,
    real: Option<f64>,
}

impl Base {
    fn new(ln: Complex64, modulus: f64) -> Base {
        Base { ln, real: (ln.im == 0.0).then_some(modulus) }
    }

    fn of(z: Complex64) -> Base {
        Base::new(principal_ln(z), z.norm())
    }

    fn pow(&self, e: f64) -> Complex64 {
        match self.real {
            Some(x) => Complex64::new(x.powf(e), 0.0),
            None => (self.ln * e).exp(),
        }
    }
}

/// Powers `v^{pre − (k+1)u}` of the series `z^g H`, where `v` is `base`.
#[derive(Clone, Copy, Debug)]
struct Powers {
    base: Base,
    pre: f64,
    u: f64,
}

impl Powers {
    /// z^g H(z^a): base z, pre g, step a.
    fn of_z(q: &ExpansionParams, z: Base) -> Powers {
        Powers { base: z, pre: q.gamma_param, u: q.alpha }
    }
}

const DIRECT_LIMIT: f64 = 600.0;

/// Terms of the algebraic series
/// `Σ_k (−1)^k v^{pre−(k+1)u} / ((g − a(k+1)) Γ(b − ak))`,
/// with the k = m−1 term replaced by an exact zero in the log case.
fn algebraic_terms(q: &ExpansionParams, pw: Powers, tag: LogCaseTag, max_terms: usize) -> Vec<Complex64> {
    let (a, b, g) = (q.alpha, q.beta, q.gamma_param);
    let mut terms = Vec::with_capacity(max_terms);
    let mut least = f64::INFINITY;
    for k in 0..max_terms {
        if tag.m == Some(k as u32 + 1) {
            terms.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let (lr, sr) = ln_rg(b - a * k as f64);
        if sr == 0.0 {
            terms.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let d = g - a * (k + 1) as f64;
        let e = pw.pre - (k + 1) as f64 * pw.u;
        let ln_pow = e * pw.base.ln.re;
        let ln_coef = lr - d.abs().ln();
        let ln_mag = ln_pow + ln_coef;
        if !ln_mag.is_finite() || ln_mag > least + 70.0 {
            break;
        }
        least = least.min(ln_mag);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let t = if ln_pow.abs() < DIRECT_LIMIT && ln_coef.abs() < DIRECT_LIMIT {
            pw.base.pow(e) * (sign * rg(b - a * k as f64) / d)
        } else {
            let phase = e * pw.base.ln.im;
            Complex64::from_polar(ln_mag.exp(), phase) * (sign * sr * d.signum())
        };
        terms.push(t);
    }
    terms
}

/// Constant (regular) or logarithmic (log case) leading term of H.
fn algebraic_constant(q: &ExpansionParams, pw: Powers, tag: LogCaseTag) -> Result<Complex64> {
    let (a, b, g) = (q.alpha, q.beta, q.gamma_param);
    let c0 = a + b - g;
    let mut e = pw.pre - (g / a) * pw.u;
    if e.abs() < PARAM_EPS {
        e = 0.0;
    }
    let scale = pw.base.pow(e);
    match tag.m {
        None => {
            let s = sin_pi(g / a);
            if s.abs() < PARAM_EPS {
                return Err(Error::DegenerateParameter(format!(
                    "sin(γπ/α) = {s:e} but α = {a} is not tagged as a log case"
                )));
            }
            Ok(scale * ((PI / a) * rg(c0) / s))
        }
        Some(m) => {
            let sgn = if m % 2 == 1 { 1.0 } else { -1.0 };
            let bracket = if near_nonpositive_integer(c0, POLE_TOLERANCE) {
                // 1/Γ(x)·(ℓ − ψ(x)) → (−1)^n n! as x → −n
                let n = (-c0.round()) as u32;
                let f = pochhammer(1.0, n);
                Complex64::new(if n.is_multiple_of(2) { f } else { -f }, 0.0)
            } else {
                (pw.base.ln * (pw.u / a) - digamma_any(c0)?) * rg(c0)
            };
            Ok(scale * bracket * sgn)
        }
    }
}

fn algebraic_sum(q: &ExpansionParams, pw: Powers, tag: LogCaseTag, max_terms: usize) -> Result<TruncatedSum> {
    let c = algebraic_constant(q, pw, tag)?;
    let mut t = truncated_sum(&algebraic_terms(q, pw, tag, max_terms));
    t.value += c;
    Ok(t)
}

/// `e^{ln_pre} (1/a) X^ϑ e^X Σ_j (a+b−g)_j X^{−j}` with X = e^{ln_x}, ϑ = −a−b.
fn exponential_sum(
    p: &ExpansionParams,
    ln_x: Complex64,
    ln_pre: Complex64,
    max_terms: usize,
) -> Result<TruncatedSum> {
    let (a, b, g) = (p.alpha, p.beta, p.gamma_param);
    let x = ln_x.exp();
    if x.re > OVERFLOW_EXPONENT {
        return Err(Error::Overflow(x.re));
    }
    let c0 = a + b - g;
    let mut terms = Vec::with_capacity(max_terms);
    let mut ln_c = 0.0f64;
    let mut sign = 1.0f64;
    let mut least = f64::INFINITY;
    for j in 0..max_terms {
        if j > 0 {
            let f = c0 + (j - 1) as f64;
            if f == 0.0 {
                break;
            }
            ln_c += f.abs().ln();
            sign *= f.signum();
        }
        let ln_t = Complex64::new(ln_c, 0.0) - ln_x * j as f64;
        if !ln_t.re.is_finite() || ln_t.re > least + 70.0 {
            break;
        }
        least = least.min(ln_t.re);
        terms.push(ln_t.exp() * sign);
    }
    let mut t = truncated_sum(&terms);
    let pre = (ln_pre + ln_x * (-a - b) + x).exp() / a;
    t.value *= pre;
    t.omitted_magnitude *= pre.norm();
    Ok(t)
}

/// Principal log of z with a negative-zero imaginary part read as +0.
fn principal_ln(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), principal_arg(z))
}

/// Algebraic expansion z^γ H(z^α) of the family member with parameters `p`,
/// i.e. the inverse-power series (plus constant or log term) of Ein when γ = 1.
pub fn algebraic_h(p: &ExpansionParams, z: Complex64, max_terms: usize) -> Result<TruncatedSum> {
    p.validate()?;
    check_point(z)?;
    if z.norm() <= 1.0 {
        return Err(Error::Domain(format!("algebraic expansion needs |z| > 1, got {}", z.norm())));
    }
    algebraic_sum(p, Powers::of_z(p, Base::of(z)), LogCaseTag::of(p), max_terms.min(MAX_ALGEBRAIC_TERMS))
}

/// Exponential expansion E_{α,β}(z) = (1/α) w^ϑ e^w Σ (α+β−γ)_j w^{−j},
/// w = e^{−πi/α} z.
pub fn exponential_e(p: &ExpansionParams, z: Complex64, max_terms: usize) -> Result<TruncatedSum> {
    p.validate()?;
    check_point(z)?;
    if z.norm() <= 1.0 {
        return Err(Error::Domain(format!("exponential expansion needs |z| > 1, got {}", z.norm())));
    }
    let ln_w = principal_ln(z) - I * (PI / p.alpha);
    exponential_sum(p, ln_w, Complex64::new(0.0, 0.0), max_terms.min(MAX_EXPONENTIAL_TERMS))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "algebraic")]
    Algebraic,
    #[serde(rename = "algebraic+exponential")]
    AlgebraicExponential,
    #[serde(rename = "log-case")]
    LogCase,
    #[serde(rename = "alpha2")]
    Alpha2,
    #[serde(rename = "stokes-corrected")]
    StokesCorrected,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Algebraic => "algebraic",
            Branch::AlgebraicExponential => "algebraic+exponential",
            Branch::LogCase => "log-case",
            Branch::Alpha2 => "alpha2",
            Branch::StokesCorrected => "stokes-corrected",
        }
    }

    /// True for branches that use the algebraic expansion alone.
    pub fn is_algebraic_only(&self) -> bool {
        matches!(self, Branch::Algebraic | Branch::LogCase)
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Asymptotic value with the diagnostics needed for a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymValue {
    pub value: Complex64,
    pub branch: Branch,
    /// Truncation index of H first, then of each exponential series.
    pub trunc_indices: Vec<usize>,
    pub omitted_magnitudes: Vec<f64>,
    pub log_case: LogCaseTag,
    pub warnings: Vec<String>,
}

impl AsymValue {
    fn conj(mut self) -> Self {
        self.value = self.value.conj();
        self
    }

    fn negate(mut self) -> Self {
        self.value = -self.value;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymOptions {
    /// Include exponentially small contributions below the Stokes threshold.
    pub stokes: bool,
}

struct Parts {
    h: TruncatedSum,
    exps: Vec<TruncatedSum>,
}

impl Parts {
    fn into_value(self, branch: Branch, tag: LogCaseTag, warnings: Vec<String>) -> AsymValue {
        let mut value = self.h.value;
        let mut trunc_indices = vec![self.h.terms_used];
        let mut omitted = vec![self.h.omitted_magnitude];
        for e in &self.exps {
            value += e.value;
            trunc_indices.push(e.terms_used);
            omitted.push(e.omitted_magnitude);
        }
        AsymValue { value, branch, trunc_indices, omitted_magnitudes: omitted, log_case: tag, warnings }
    }
}

fn check_asym_point(z: Complex64) -> Result<()> {
    check_point(z)?;
    if z.norm() < MIN_MODULUS {
        return Err(Error::Domain(format!(
            "asymptotic evaluation needs |z| >= {MIN_MODULUS}, got {}",
            z.norm()
        )));
    }
    Ok(())
}

fn is_two(a: f64) -> bool {
    (a - 2.0).abs() < PARAM_EPS
}

/// z^g F(χ), χ = e^{−πi} z^a, for 0 ≤ arg z ≤ π and a ≤ 2 (F-level `q`).
fn member_upper(q: &ExpansionParams, z: Complex64, opts: AsymOptions) -> Result<AsymValue> {
    let lz = principal_ln(z);
    let theta = lz.im;
    let tag = LogCaseTag::of(q);
    let mut warnings: Vec<String> = conditioning_warning(q).into_iter().collect();
    let ln_pre = lz * q.gamma_param;
    let h = algebraic_sum(q, Powers::of_z(q, Base::of(z)), tag, MAX_ALGEBRAIC_TERMS)?;
    let sector = classify_sector(q.alpha, theta);
    let plain = if tag.is_log_case { Branch::LogCase } else { Branch::Algebraic };
    let (exps, branch) = match sector.regime {
        Regime::AlphaEqualsTwo => {
            let e1 = exponential_sum(q, lz - I * (PI / 2.0), ln_pre, MAX_EXPONENTIAL_TERMS)?;
            let e2 = exponential_sum(q, lz + I * (PI / 2.0), ln_pre, MAX_EXPONENTIAL_TERMS)?;
            (vec![e1, e2], Branch::Alpha2)
        }
        Regime::AlgebraicPlusExponential => {
            let e = exponential_sum(q, lz - I * (PI / q.alpha), ln_pre, MAX_EXPONENTIAL_TERMS)?;
            (vec![e], Branch::AlgebraicExponential)
        }
        Regime::AlgebraicOnly if opts.stokes => {
            let e = exponential_sum(q, lz - I * (PI / q.alpha), ln_pre, MAX_EXPONENTIAL_TERMS)?;
            (vec![e], Branch::StokesCorrected)
        }
        Regime::SubTwoThirds => {
            if opts.stokes {
                warnings.push("stokes option ignored: alpha < 2/3 has no exponential term here".into());
            }
            if theta != 0.0 {
                warnings.push(format!(
                    "sub-two-thirds sector (theta0 = {:.4} > pi): algebraic expansion only",
                    sector.theta0
                ));
            }
            (Vec::new(), plain)
        }
        Regime::AlgebraicOnly => (Vec::new(), plain),
    };
    Ok(Parts { h, exps }.into_value(branch, tag, warnings))
}

/// Ein-type evaluation for F-level parameters `q` at any arg z.
fn member(q: &ExpansionParams, z: Complex64, opts: AsymOptions) -> Result<AsymValue> {
    let theta = principal_arg(z);
    if theta < 0.0 {
        return Ok(member(q, z.conj(), opts)?.conj());
    }
    if is_two(q.alpha) && theta > PI / 2.0 {
        // Ein_{2,β} is odd: Ein(z) = −conj(Ein(conj(−z))) with arg conj(−z) = π − arg z.
        let mirror = (-z).conj();
        return Ok(member_upper(q, mirror, opts)?.conj().negate());
    }
    member_upper(q, z, opts)
}

fn check_alpha_range(alpha: f64, hi: f64) -> Result<()> {
    if alpha > hi + PARAM_EPS {
        return Err(Error::UnsupportedRegime(format!("alpha = {alpha} exceeds {hi}")));
    }
    Ok(())
}

/// Asymptotic Ein_{α,β}(z) for 0 < α ≤ 2.
pub fn ein_asymptotic(p: &ExpansionParams, z: Complex64) -> Result<AsymValue> {
    ein_asymptotic_with(p, z, AsymOptions::default())
}

/// [`ein_asymptotic`] with options. With `stokes` set, real z and α = 1
/// use [`stokes_corrected_ein1`]; elsewhere below the Stokes threshold the
/// exponential series is added at full weight.
pub fn ein_asymptotic_with(p: &ExpansionParams, z: Complex64, opts: AsymOptions) -> Result<AsymValue> {
    p.validate()?;
    check_asym_point(z)?;
    check_alpha_range(p.alpha, 2.0)?;
    if opts.stokes && (p.alpha - 1.0).abs() < PARAM_EPS && principal_arg(z) == 0.0 {
        return stokes_corrected_ein1(p.beta, z.re);
    }
    let q = ExpansionParams::ein(p.alpha, p.beta)?;
    member(&q, z, opts)
}

/// Ein_{1,β}(x) including the half-weight exponentially small correction
/// `−e^{−x} x^{−β} cos(πβ) Σ_j (−1)^j (β)_j x^{−j}`.
pub fn stokes_corrected_ein1(beta: f64, x: f64) -> Result<AsymValue> {
    if !(beta.is_finite() && x.is_finite()) {
        return Err(Error::NonFinite(format!("beta={beta}, x={x}")));
    }
    if x < MIN_MODULUS {
        return Err(Error::Domain(format!("stokes correction needs x >= {MIN_MODULUS}, got {x}")));
    }
    let q = ExpansionParams::ein(1.0, beta)?;
    let tag = LogCaseTag { is_log_case: true, m: Some(1) };
    let h = algebraic_sum(&q, Powers::of_z(&q, Base::of(Complex64::new(x, 0.0))), tag, MAX_ALGEBRAIC_TERMS)?;
    let mut terms = Vec::with_capacity(MAX_EXPONENTIAL_TERMS);
    let mut t = 1.0f64;
    for j in 0..MAX_EXPONENTIAL_TERMS {
        if j > 0 {
            t *= -(beta + (j - 1) as f64) / x;
        }
        if !t.is_finite() {
            break;
        }
        terms.push(Complex64::new(t, 0.0));
    }
    let mut s = truncated_sum(&terms);
    let pre = -(-x).exp() * x.powf(-beta) * cos_pi(beta);
    s.value *= pre;
    s.omitted_magnitude *= pre.abs();
    Ok(Parts { h, exps: vec![s] }.into_value(Branch::StokesCorrected, tag, Vec::new()))
}

fn family_sector_check(alpha: f64, z: Complex64) -> Result<()> {
    if alpha <= 0.0 || alpha > 1.0 + PARAM_EPS {
        return Err(Error::Domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    let arg = principal_arg(z);
    let limit = PI * (1.0 - alpha) / (2.0 * alpha);
    if arg != 0.0 && arg.abs() >= limit {
        return Err(Error::SectorViolation { arg, limit });
    }
    Ok(())
}

/// F-level parameters of Sin_{α,β}: (2α, β−α, 1).
pub fn sin_family(p: &ExpansionParams) -> Result<ExpansionParams> {
    ExpansionParams::new(2.0 * p.alpha, p.beta - p.alpha, 1.0)
}

/// F-level parameters of Cin_{α,β}: (2α, β, 1+α).
pub fn cin_family(p: &ExpansionParams) -> Result<ExpansionParams> {
    ExpansionParams::new(2.0 * p.alpha, p.beta, 1.0 + p.alpha)
}

/// Asymptotic Sin_{α,β}(z), 0 < α ≤ 1, inside |arg z| < π(1−α)/(2α).
pub fn sin_asymptotic(p: &ExpansionParams, z: Complex64) -> Result<AsymValue> {
    p.validate()?;
    check_asym_point(z)?;
    family_sector_check(p.alpha, z)?;
    member(&sin_family(p)?, z, AsymOptions::default())
}

/// Asymptotic Cin_{α,β}(z), 0 < α ≤ 1, inside |arg z| < π(1−α)/(2α).
pub fn cin_asymptotic(p: &ExpansionParams, z: Complex64) -> Result<AsymValue> {
    p.validate()?;
    check_asym_point(z)?;
    family_sector_check(p.alpha, z)?;
    member(&cin_family(p)?, z, AsymOptions::default())
}

/// Asymptotic F(χ) for general γ and 0 < α ≤ 2, taking the upper sign
/// (χe^{−πi}) when arg χ ≥ 0 and the lower sign otherwise.
pub fn f_chi_asymptotic(p: &ExpansionParams, chi: Complex64) -> Result<AsymValue> {
    p.validate()?;
    check_point(chi)?;
    check_alpha_range(p.alpha, 2.0)?;
    if chi.norm() < MIN_MODULUS.powf(p.alpha) {
        return Err(Error::Domain(format!(
            "F asymptotics need |chi| >= 3^alpha, got {}",
            chi.norm()
        )));
    }
    let lc = principal_ln(chi);
    let phi = lc.im;
    let turn = if phi >= 0.0 { -PI } else { PI };
    let ln_u = lc + I * turn;
    let zero = Complex64::new(0.0, 0.0);
    let tag = LogCaseTag::of(p);
    let warnings: Vec<String> = conditioning_warning(p).into_iter().collect();
    let pw = Powers { base: Base::new(ln_u, chi.norm()), pre: 0.0, u: 1.0 };
    let h = algebraic_sum(p, pw, tag, MAX_ALGEBRAIC_TERMS)?;
    let a = p.alpha;
    let plain = if tag.is_log_case { Branch::LogCase } else { Branch::Algebraic };
    let (exps, branch) = if is_two(a) {
        let e1 = exponential_sum(p, lc / a, zero, MAX_EXPONENTIAL_TERMS)?;
        let e2 = exponential_sum(p, (lc + I * (2.0 * turn)) / a, zero, MAX_EXPONENTIAL_TERMS)?;
        (vec![e1, e2], Branch::Alpha2)
    } else if phi.abs() <= PI * a / 2.0 + PARAM_EPS {
        (vec![exponential_sum(p, lc / a, zero, MAX_EXPONENTIAL_TERMS)?], Branch::AlgebraicExponential)
    } else {
        (Vec::new(), plain)
    };
    Ok(Parts { h, exps }.into_value(branch, tag, warnings))
}

/// Leading asymptotic behaviour of Ein, Sin or Cin at z: the constant (or
/// logarithmic) term of H plus its first inverse power, without any
/// exponential contribution.
pub fn leading_approximation(
    f: crate::series::FunctionId,
    p: &ExpansionParams,
    z: Complex64,
) -> Result<Complex64> {
    use crate::series::FunctionId;
    p.validate()?;
    check_point(z)?;
    let q = match f {
        FunctionId::Ein => ExpansionParams::ein(p.alpha, p.beta)?,
        FunctionId::Sin => sin_family(p)?,
        FunctionId::Cin => cin_family(p)?,
        FunctionId::F => {
            return Err(Error::Domain("leading approximation is defined for ein, sin, cin".into()))
        }
    };
    let pw = Powers::of_z(&q, Base::of(z));
    let tag = LogCaseTag::of(&q);
    let c = algebraic_constant(&q, pw, tag)?;
    let first = algebraic_terms(&q, pw, tag, 1);
    Ok(c + first.first().copied().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::EULER_GAMMA;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn wright_constants() {
        let p = ExpansionParams::ein(0.5, 1.0).unwrap();
        let w = WrightConstants::new(&p).unwrap();
        assert_eq!(w.kappa, 0.5);
        assert!((w.h - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(w.theta_upper, -1.5);
        assert_eq!(w.theta_prime, 2.5);
        assert_eq!(w.a0, 2.0);
        assert_eq!(w.c(0), 1.0);
        assert_eq!(w.c(3), 0.5 * 1.5 * 2.5);
    }

    #[test]
    fn sector_examples() {
        let s = classify_sector(1.0, 0.0);
        assert!((s.theta0 - PI / 2.0).abs() < 1e-15);
        assert_eq!(s.regime, Regime::AlgebraicOnly);
        let s = classify_sector(2.0, 1.0);
        assert_eq!((s.theta0, s.regime), (0.0, Regime::AlphaEqualsTwo));
        let s = classify_sector(0.5, PI);
        assert!((s.theta0 - 1.5 * PI).abs() < 1e-15);
        assert_eq!(s.regime, Regime::SubTwoThirds);
        assert_eq!(classify_sector(1.5, PI).regime, Regime::AlgebraicPlusExponential);
        assert_eq!(classify_sector(1.0, PI / 2.0).regime, Regime::AlgebraicPlusExponential);
    }

    #[test]
    fn log_case_tags() {
        let tag = |a: f64, g: f64| LogCaseTag::of(&ExpansionParams::new(a, 1.0, g).unwrap());
        assert_eq!(tag(0.25, 1.0).m, Some(4));
        assert_eq!(tag(1.0, 1.0).m, Some(1));
        assert!(!tag(0.4, 1.0).is_log_case);
        assert!(!tag(0.5 + 1e-6, 1.0).is_log_case);
        // Cin at α = 1/3: F-level (2/3, γ = 4/3) gives m = 2
        assert_eq!(tag(2.0 / 3.0, 4.0 / 3.0).m, Some(2));
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(optimal_truncate(&[5.0, 2.0, 1.0, 3.0, 9.0]), 2);
        assert_eq!(optimal_truncate(&[1.0]), 0);
        assert_eq!(optimal_truncate(&[4.0, 3.0, 2.0, 1.0]), 3);
        assert_eq!(optimal_truncate(&[3.0, 0.0, 1.0, 0.0, 2.0]), 2);
        let mags: Vec<f64> = (0..30)
            .map(|j| pochhammer(1.0, j) / 10f64.powi(j as i32))
            .collect();
        assert_eq!(optimal_truncate(&mags), 9);
    }

    #[test]
    fn terminating_series_is_summed_whole() {
        let t = [re(2.0), re(-1.0), re(0.0), re(0.0)];
        let s = truncated_sum(&t);
        assert_eq!(s.value, re(1.0));
        assert_eq!(s.omitted_magnitude, 0.0);
    }

    #[test]
    fn ein11_algebraic_is_log_plus_euler() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        let h = algebraic_h(&p, re(20.0), 200).unwrap();
        assert!(rel(h.value, re(20f64.ln() + EULER_GAMMA)) < 1e-15);
        let terms = algebraic_terms(&p, Powers::of_z(&p, Base::of(re(20.0))), LogCaseTag::of(&p), 50);
        assert!(terms.iter().all(|t| *t == re(0.0)));
    }

    #[test]
    fn ein21_algebraic_terminates() {
        let p = ExpansionParams::ein(2.0, 1.0).unwrap();
        let h = algebraic_h(&p, re(10.0), 200).unwrap();
        assert!(rel(h.value, re(PI / 2.0 - 0.1)) < 1e-15);
    }

    #[test]
    fn exponential_leading_term_alpha_two() {
        let p = ExpansionParams::ein(2.0, 1.0).unwrap();
        let e = exponential_e(&p, re(10.0), 1).unwrap();
        assert!((e.value.norm() - 0.5 * 10f64.powi(-3)).abs() < 1e-18);
    }

    #[test]
    fn exponential_overflow_is_reported() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        assert!(matches!(exponential_e(&p, re(-800.0), 10), Err(Error::Overflow(_))));
    }

    #[test]
    fn alpha_two_real_axis_is_real() {
        for beta in [1.0, 4.0 / 3.0] {
            let p = ExpansionParams::ein(2.0, beta).unwrap();
            let v = ein_asymptotic(&p, re(10.0)).unwrap();
            assert_eq!(v.branch, Branch::Alpha2);
            assert!(v.value.im.abs() <= 1e-13 * v.value.norm());
        }
    }

    #[test]
    fn alpha_two_cosine_form() {
        // H − x^{−1−β} Σ (1+β)_j x^{−j} cos(x − π(β+j)/2) at β = 1, x = 30
        let (x, beta) = (30.0, 1.0);
        let v = ein_asymptotic(&ExpansionParams::ein(2.0, beta).unwrap(), re(x)).unwrap();
        let mut s = 0.0;
        let mags: Vec<f64> = (0..60).map(|j| pochhammer(1.0 + beta, j) / x.powi(j as i32)).collect();
        let n = optimal_truncate(&mags);
        for (j, m) in mags.iter().enumerate().take(n) {
            s += m * (x - PI * (beta + j as f64) / 2.0).cos();
        }
        let want = PI / 2.0 - 1.0 / x - x.powf(-1.0 - beta) * s;
        assert!((v.value.re - want).abs() < 1e-15);
    }

    #[test]
    fn alpha_two_oddness() {
        let p = ExpansionParams::ein(2.0, 4.0 / 3.0).unwrap();
        let z = Complex64::from_polar(20.0, PI / 4.0);
        let a = ein_asymptotic(&p, z).unwrap().value;
        let b = ein_asymptotic(&p, -z).unwrap().value;
        assert!(rel(a, -b) < 1e-15);
    }

    #[test]
    fn conjugate_symmetry() {
        let p = ExpansionParams::ein(1.5, 1.0 / 3.0).unwrap();
        let z = Complex64::from_polar(20.0, 2.0);
        let a = ein_asymptotic(&p, z).unwrap().value;
        let b = ein_asymptotic(&p, z.conj()).unwrap().value;
        assert_eq!(a, b.conj());
    }

    #[test]
    fn sin_alpha_one_tends_to_half_pi() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        let v = sin_asymptotic(&p, re(1e6)).unwrap();
        assert!((v.value.re - PI / 2.0).abs() < 2e-6);
    }

    #[test]
    fn sin_sector_violation() {
        let p = ExpansionParams::ein(0.5, 1.0).unwrap();
        let z = Complex64::from_polar(10.0, 2.0);
        assert!(matches!(sin_asymptotic(&p, z), Err(Error::SectorViolation { .. })));
    }

    #[test]
    fn stokes_zero_for_half_beta() {
        let a = stokes_corrected_ein1(0.5, 10.0).unwrap();
        let b = ein_asymptotic(&ExpansionParams::ein(1.0, 0.5).unwrap(), re(10.0)).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.branch, Branch::StokesCorrected);
    }

    #[test]
    fn f_chi_matches_ein_path() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        let x = 12.0;
        let f = f_chi_asymptotic(&p, re(-x)).unwrap().value * x;
        let e = ein_asymptotic(&p, re(x)).unwrap().value;
        assert!(rel(f, e) < 1e-15);
        let p = ExpansionParams::ein(0.75, 1.0).unwrap();
        let f = f_chi_asymptotic(&p, re(-x.powf(0.75))).unwrap().value * x;
        let e = ein_asymptotic(&p, re(x)).unwrap().value;
        assert!(rel(f, e) < 1e-14);
    }

    #[test]
    fn f_chi_matches_cin_path() {
        let p = ExpansionParams::cin(0.5, 4.0 / 3.0).unwrap();
        let q = cin_family(&p).unwrap();
        let x: f64 = 20.0;
        let f = f_chi_asymptotic(&q, re(-x)).unwrap().value * x.powf(1.5);
        let c = cin_asymptotic(&p, re(x)).unwrap().value;
        assert!(rel(f, c) < 1e-14);
    }

    #[test]
    fn leading_curves() {
        let p = ExpansionParams::ein(1.0, 1.0).unwrap();
        let s = leading_approximation(crate::series::FunctionId::Sin, &p, re(50.0)).unwrap();
        assert!((s.re - PI / 2.0).abs() < 1e-15);
        let c = leading_approximation(crate::series::FunctionId::Cin, &p, re(7.0)).unwrap();
        assert!((c.re - (7f64.ln() + EULER_GAMMA)).abs() < 1e-15);
    }

    #[test]
    fn conditioning_warning_near_log_case() {
        let p = ExpansionParams::ein(0.5 + 1e-8, 1.0).unwrap();
        let v = ein_asymptotic(&p, re(20.0)).unwrap();
        assert_eq!(v.warnings.len(), 1);
    }
}

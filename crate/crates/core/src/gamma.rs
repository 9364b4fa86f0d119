//! Gamma-family primitives: log-gamma, reciprocal gamma, digamma, Pochhammer.
//!
//! Standard precision uses Stirling's series after an upward shift of the
//! argument (|w| ≥ 15) and the reflection formula left of Re z = ½. The
//! [`extended`] submodule mirrors the real-argument routines on [`XFloat`].
//!
//! [`XFloat`]: crate::xfloat::XFloat

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// B_{2k} / (2k (2k-1)) for k = 1..=8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// B_{2k} / (2k) for k = 1..=7.
const DIGAMMA_ASYM: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

const SHIFT_TO: f64 = 15.0;

/// Taylor coefficients of 1/Γ(1+t) at t = 0 (t ≤ ½ in modulus needs 24).
const RECIP_GAMMA_TAYLOR: [f64; 24] = [
    1.0,
    0.5772156649015329,
    -0.6558780715202539,
    -0.04200263503409524,
    0.16653861138229148,
    -0.04219773455554433,
    -0.009621971527876973,
    0.0072189432466631,
    -0.0011651675918590652,
    -0.00021524167411495098,
    0.0001280502823881162,
    -2.013485478078824e-05,
    -1.2504934821426706e-06,
    1.133027231981696e-06,
    -2.056338416977607e-07,
    6.116095104481416e-09,
    5.002007644469223e-09,
    -1.18127457048702e-09,
    1.0434267116911005e-10,
    7.782263439905071e-12,
    -3.696805618642206e-12,
    5.100370287454476e-13,
    -2.0583260535665066e-14,
    -5.348122539423018e-15,
];

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{z}")))
    }
}

/// True when `x` is an exact non-positive integer.
pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// True when `x` lies within `tol` of a non-positive integer.
pub fn near_nonpositive_integer(x: f64, tol: f64) -> bool {
    x < 0.5 && (x - x.round()).abs() < tol && x.round() <= 0.0
}

/// sin(πx) with exact argument reduction; exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    let a = r.abs();
    if a == 0.0 || a == 1.0 {
        return 0.0;
    }
    let a = if a > 0.5 { 1.0 - a } else { a };
    r.signum() * (PI * a).sin()
}

/// cos(πx); exactly zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn sin_pi_complex(z: Complex64) -> Complex64 {
    // sin(π(x+iy)) = sin(πx)cosh(πy) + i cos(πx)sinh(πy)
    let y = PI * z.im;
    Complex64::new(sin_pi(z.re) * y.cosh(), cos_pi(z.re) * y.sinh())
}

fn principal(v: Complex64) -> Complex64 {
    let two_pi = 2.0 * PI;
    let mut im = v.im - two_pi * (v.im / two_pi).round();
    if im <= -PI {
        im += two_pi;
    }
    Complex64::new(v.re, im)
}

fn stirling_series(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    let mut s = Complex64::new(0.0, 0.0);
    for c in STIRLING {
        s += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + s
}

fn log_gamma_right(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut shifted = false;
    while w.norm() < SHIFT_TO {
        prod *= w;
        w += 1.0;
        shifted = true;
    }
    let v = stirling_series(w);
    if shifted {
        v - prod.ln()
    } else {
        v
    }
}

fn ln_factorial_small(n: u32) -> f64 {
    let mut f = 1.0f64;
    for k in 2..=n {
        f *= k as f64;
    }
    f.ln()
}

/// Principal-branch log Γ(z).
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z)?;
    if z.im == 0.0 && z.re <= 0.0 && (z.re - z.re.round()).abs() <= 1e-300 {
        return Err(Error::Pole(z.re));
    }
    if z.im == 0.0 && z.re > 0.0 && z.re <= 30.0 && z.re == z.re.round() {
        return Ok(Complex64::new(ln_factorial_small(z.re as u32 - 1), 0.0));
    }
    let v = if z.re < 0.5 {
        let s = sin_pi_complex(z);
        Complex64::new(LN_PI, 0.0) - s.ln() - log_gamma_right(Complex64::new(1.0, 0.0) - z)
    } else {
        log_gamma_right(z)
    };
    Ok(principal(v))
}

/// ln Γ(x) for real x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite(format!("{x}")));
    }
    if x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(log_gamma(Complex64::new(x, 0.0))?.re)
}

/// 1/Γ(1+t) for |t| ≤ ½.
fn recip_gamma_1p(t: f64) -> f64 {
    RECIP_GAMMA_TAYLOR.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// Γ(x) for x ≥ 10: √(2π) x^{x−½} e^{−x} e^{S(x)}, powers split to avoid overflow.
fn gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut p = inv;
    let mut s = 0.0;
    for c in STIRLING {
        s += c * p;
        p *= inv2;
    }
    let sqrt_2pi = 2.506_628_274_631_000_7;
    let half = x.powf((x - 0.5) / 2.0);
    sqrt_2pi * half * ((-x).exp() * half) * s.exp()
}

/// Γ(x) at a non-pole finite x. Integer shifts of x are exact in binary, so
/// only the products and the final kernel contribute rounding.
fn gamma_real(x: f64) -> f64 {
    if x >= 10.0 {
        if x > 171.7 {
            return f64::INFINITY;
        }
        return gamma_stirling(x);
    }
    if x >= 1.5 {
        let n = (x - 0.5).floor();
        let t = x - n;
        let mut prod = 1.0;
        let mut k = 1.0;
        while k <= n {
            prod *= x - k;
            k += 1.0;
        }
        return prod / recip_gamma_1p(t - 1.0);
    }
    if x >= 0.5 {
        return 1.0 / recip_gamma_1p(x - 1.0);
    }
    if x >= -0.5 {
        return 1.0 / (x * recip_gamma_1p(x));
    }
    if x > -10.0 {
        let n = (-0.5 - x).ceil();
        let t = x + n;
        let mut prod = 1.0;
        let mut k = 0.0;
        while k < n {
            prod *= x + k;
            k += 1.0;
        }
        return 1.0 / (prod * t * recip_gamma_1p(t));
    }
    // Γ(x) Γ(1−x) = π / sin(πx) with Γ(1−x) = (−x) Γ(−x)
    PI / (sin_pi(x) * (-x) * gamma_real(-x))
}

/// Γ(x) for real x; pole error at non-positive integers.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite(format!("{x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    Ok(gamma_real(x))
}

/// 1/Γ(x): entire, exactly zero at non-positive integers.
pub fn recip_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if (-0.5..1.5).contains(&x) {
        return if x >= 0.5 { recip_gamma_1p(x - 1.0) } else { x * recip_gamma_1p(x) };
    }
    if x > 171.0 {
        return (-ln_gamma(x).unwrap_or(f64::INFINITY)).exp();
    }
    if x < -10.0 {
        // 1/Γ(x) = sin(πx) (−x) Γ(−x) / π
        let g = gamma_real(-x);
        if g.is_finite() {
            return sin_pi(x) * (-x) * g / PI;
        }
        let (l, sg) = ln_abs_recip_gamma(x);
        return sg * l.exp();
    }
    1.0 / gamma_real(x)
}

/// `(ln |1/Γ(x)|, sign(1/Γ(x)))`; the sign is 0 at non-positive integers.
pub fn ln_abs_recip_gamma(x: f64) -> (f64, f64) {
    if x > 0.5 {
        return (-ln_gamma(x).unwrap_or(f64::INFINITY), 1.0);
    }
    if is_nonpositive_integer(x) {
        return (f64::NEG_INFINITY, 0.0);
    }
    let s = sin_pi(x);
    let lg = ln_gamma(1.0 - x).unwrap_or(f64::INFINITY);
    (s.abs().ln() + lg - LN_PI, s.signum())
}

/// ψ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite(format!("{x}")));
    }
    if x <= 0.0 {
        return Err(Error::Domain(format!("digamma requires x > 0, got {x}")));
    }
    let mut acc = 0.0;
    let mut w = x;
    while w < 10.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    let mut p = inv2;
    let mut s = 0.0;
    for c in DIGAMMA_ASYM {
        s += c * p;
        p *= inv2;
    }
    Ok(acc + w.ln() - 0.5 / w - s)
}

/// Rising factorial (a)_j by upward recurrence.
pub fn pochhammer(a: f64, j: u32) -> f64 {
    let mut p = 1.0;
    for i in 0..j {
        p *= a + i as f64;
    }
    p
}

pub mod extended {
    //! Real-argument gamma routines on [`XFloat`].

    use std::sync::OnceLock;

    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    use crate::error::{Error, Result};
    use crate::xfloat::{half_ln_2pi, pi, XFloat, MAX_PREC};

    const TABLE_LEN: usize = 120;
    const TABLE_PREC: u32 = MAX_PREC + 128;

    /// B_{2k} / (2k (2k-1)), k = 1..=TABLE_LEN, via tangent numbers.
    fn stirling_coefficients() -> &'static [XFloat] {
        static TABLE: OnceLock<Vec<XFloat>> = OnceLock::new();
        TABLE.get_or_init(|| {
            let n = TABLE_LEN;
            let mut t = vec![BigInt::zero(); n + 1];
            t[1] = BigInt::one();
            for k in 2..=n {
                t[k] = &t[k - 1] * BigInt::from(k - 1);
            }
            for k in 2..=n {
                for j in k..=n {
                    t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
                }
            }
            (1..=n)
                .map(|k| {
                    // B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))
                    let four_k = BigInt::one() << (2 * k);
                    let num = BigInt::from(2 * k) * &t[k];
                    let den = &four_k * (&four_k - 1u32) * BigInt::from(2 * k * (2 * k - 1));
                    let v = XFloat::from_ratio(&num, &den, TABLE_PREC);
                    if k % 2 == 1 {
                        v
                    } else {
                        v.neg()
                    }
                })
                .collect()
        })
    }

    /// True when `x` is exactly a non-positive integer.
    pub fn is_nonpositive_integer(x: &XFloat) -> bool {
        if x.signum() > 0 {
            return false;
        }
        if x.is_zero() {
            return true;
        }
        let r = XFloat::from_f64(x.to_f64().round(), x.prec());
        x.sub(&r).is_zero()
    }

    /// ln Γ(x) for real x > 0.
    pub fn ln_gamma(x: &XFloat) -> Result<XFloat> {
        if x.signum() <= 0 {
            return Err(Error::Domain(format!(
                "extended ln_gamma requires x > 0, got {}",
                x.to_f64()
            )));
        }
        let prec = x.prec();
        let w = prec + 32;
        let x0 = (0.3 * w as f64).max(16.0);
        let one = XFloat::one(w);
        let mut y = x.round(w);
        let mut prod = XFloat::one(w);
        let mut shifted = false;
        while y.to_f64() < x0 {
            prod = prod.mul(&y);
            y = y.add(&one);
            shifted = true;
        }
        let ln_y = y.ln();
        let mut s = y
            .sub(&XFloat::from_f64(0.5, w))
            .mul(&ln_y)
            .sub(&y)
            .add(&half_ln_2pi(w));
        let inv = one.div(&y);
        let inv2 = inv.mul(&inv);
        let mut p = inv;
        let floor = s.top_bit() - w as i64 - 4;
        let coefs = stirling_coefficients();
        let mut converged = false;
        for c in coefs {
            let term = c.round(w).mul(&p);
            if term.top_bit() < floor {
                converged = true;
                break;
            }
            s = s.add(&term);
            p = p.mul(&inv2);
        }
        if !converged {
            return Err(Error::PrecisionInsufficient(
                "Stirling coefficient table exhausted".into(),
            ));
        }
        if shifted {
            s = s.sub(&prod.ln());
        }
        Ok(s.round(prec))
    }

    /// 1/Γ(x) for real x; exactly zero at non-positive integers.
    pub fn recip_gamma(x: &XFloat) -> Result<XFloat> {
        let prec = x.prec();
        if x.to_f64() > 0.5 {
            return Ok(ln_gamma(x)?.neg().exp());
        }
        if is_nonpositive_integer(x) {
            return Ok(XFloat::zero(prec));
        }
        // sin(πx) Γ(1-x) / π
        let w = prec + 16;
        let p = pi(w);
        let (s, _) = x.round(w).mul(&p).sin_cos();
        let one_minus = XFloat::one(w).sub(x);
        let g = ln_gamma(&one_minus)?.exp();
        Ok(s.mul(&g).div(&p).round(prec))
    }

    /// Γ(x) for real x; pole error at non-positive integers.
    pub fn gamma(x: &XFloat) -> Result<XFloat> {
        let r = recip_gamma(x)?;
        if r.is_zero() {
            return Err(Error::Pole(x.to_f64()));
        }
        Ok(XFloat::one(x.prec()).div(&r))
    }

    /// Rising factorial (a)_j.
    pub fn pochhammer(a: &XFloat, j: u32) -> XFloat {
        let prec = a.prec();
        let mut p = XFloat::one(prec);
        for i in 0..j {
            p = p.mul(&a.add(&XFloat::from_i64(i as i64, prec)));
        }
        p
    }
}

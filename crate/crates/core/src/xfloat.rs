//! Arbitrary-precision binary floating point built on `num-bigint`.
//!
//! A value is `mant * 2^exp` with `|mant| < 2^prec`. Rounding is to nearest on
//! every operation. Elementary functions carry guard bits internally and round
//! once on return. Precision is a per-value property; binary operations use
//! the larger of the two operand precisions.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

/// Largest supported mantissa width in bits (about 308 decimal digits).
pub const MAX_PREC: u32 = 1024;
const CONST_PREC: u32 = MAX_PREC + 256;
const STORE_PREC: u32 = CONST_PREC + 128;

/// Mantissa width giving at least `digits` significant decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

#[derive(Clone, Debug)]
pub struct XFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn normalize(mant: BigInt, exp: i64, prec: u32) -> XFloat {
    if mant.is_zero() {
        return XFloat { mant, exp: 0, prec };
    }
    let bits = mant.bits();
    if bits <= prec as u64 {
        return XFloat { mant, exp, prec };
    }
    let shift = bits - prec as u64;
    let (sign, mag) = mant.into_parts();
    let round_up = mag.bit(shift - 1);
    let mut q = mag >> shift;
    if round_up {
        q += 1u32;
    }
    let mut e = exp + shift as i64;
    if q.bits() > prec as u64 {
        q >>= 1;
        e += 1;
    }
    XFloat { mant: BigInt::from_biguint(sign, q), exp: e, prec }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

impl XFloat {
    pub fn zero(prec: u32) -> Self {
        XFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        XFloat { mant: BigInt::one(), exp: 0, prec }
    }

    /// Exact conversion (the binary value of `v` is representable).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "XFloat::from_f64 on non-finite value");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let (m, e, s) = Float::integer_decode(v);
        let mant = BigInt::from(m) * if s < 0 { -1 } else { 1 };
        normalize(mant, e as i64, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        normalize(BigInt::from(v), 0, prec)
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        Self::from_bigint(num.clone(), prec).div(&Self::from_bigint(den.clone(), prec))
    }

    pub fn from_bigint(v: BigInt, prec: u32) -> Self {
        normalize(v, 0, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same value rounded to `prec` bits.
    pub fn round(&self, prec: u32) -> Self {
        normalize(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Exponent `t` with `2^(t-1) <= |x| < 2^t`; `i64::MIN` for zero.
    pub fn top_bit(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    pub fn neg(&self) -> Self {
        XFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        XFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        XFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn add(&self, o: &XFloat) -> XFloat {
        let prec = self.prec.max(o.prec);
        if o.is_zero() {
            return self.round(prec);
        }
        if self.is_zero() {
            return o.round(prec);
        }
        let ta = self.top_bit();
        let tb = o.top_bit();
        if ta - tb > prec as i64 + 4 {
            return self.round(prec);
        }
        if tb - ta > prec as i64 + 4 {
            return o.round(prec);
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &o.mant << ((o.exp - e) as usize);
        normalize(a + b, e, prec)
    }

    pub fn sub(&self, o: &XFloat) -> XFloat {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &XFloat) -> XFloat {
        let prec = self.prec.max(o.prec);
        normalize(&self.mant * &o.mant, self.exp + o.exp, prec)
    }

    pub fn mul_i64(&self, k: i64) -> XFloat {
        normalize(&self.mant * BigInt::from(k), self.exp, self.prec)
    }

    /// Quotient; panics on division by zero, which callers rule out.
    pub fn div(&self, o: &XFloat) -> XFloat {
        assert!(!o.is_zero(), "XFloat division by zero");
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let s = (prec as i64 + 2 + o.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << (s as usize)) / &o.mant;
        normalize(q, self.exp - s - o.exp, prec)
    }

    pub fn div_i64(&self, k: i64) -> XFloat {
        self.div(&XFloat::from_i64(k, self.prec))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 64 {
            let s = bits - 64;
            (&self.mant >> (s as usize), self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        ldexp(m.to_f64().unwrap_or(f64::NAN), e)
    }

    /// Base-2 logarithm of `|x|` to roughly f64 accuracy; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        let s = bits.saturating_sub(60);
        let m = (self.mant.abs() >> (s as usize)).to_f64().unwrap_or(1.0);
        m.log2() + (self.exp + s as i64) as f64
    }

    pub fn cmp_value(&self, o: &XFloat) -> Ordering {
        self.sub(o).signum().cmp(&0)
    }

    pub fn cmp_abs(&self, o: &XFloat) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match self.top_bit().cmp(&o.top_bit()) {
            Ordering::Equal => self.abs().cmp_value(&o.abs()),
            ord => ord,
        }
    }

    /// `e^x`. Panics if `|x|` is too large for the result's exponent to be
    /// tracked (beyond 2^52), far outside any use in this crate.
    pub fn exp(&self) -> XFloat {
        let prec = self.prec;
        if self.is_zero() {
            return Self::one(prec);
        }
        let approx = self.to_f64();
        assert!(approx.abs() < 1e15, "XFloat::exp argument too large");
        let n = (approx / std::f64::consts::LN_2).round() as i64;
        let nbits = 64 - n.unsigned_abs().leading_zeros();
        let w = prec + 40 + nbits;
        let r = self.round(w).sub(&ln2(w + nbits + 8).mul_i64(n));
        const HALVINGS: i64 = 12;
        let r = r.mul_pow2(-HALVINGS);
        let mut sum = Self::one(w);
        let mut term = Self::one(w);
        let mut k = 1i64;
        loop {
            term = term.mul(&r).div_i64(k);
            if term.is_zero() || term.top_bit() < -(w as i64) - 4 {
                break;
            }
            sum = sum.add(&term);
            k += 1;
        }
        for _ in 0..HALVINGS {
            sum = sum.mul(&sum);
        }
        sum.mul_pow2(n).round(prec)
    }

    /// Natural logarithm; panics for non-positive input.
    pub fn ln(&self) -> XFloat {
        assert!(self.signum() > 0, "XFloat::ln of non-positive value");
        let prec = self.prec;
        let w = prec + 40;
        let bits = self.mant.bits() as i64;
        let mut k = self.exp + bits;
        let mut y = XFloat { mant: self.mant.clone(), exp: -bits, prec: w };
        if y.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
            y = y.mul_pow2(1);
            k -= 1;
        }
        let one = Self::one(w);
        let u = y.sub(&one).div(&y.add(&one));
        let u2 = u.mul(&u);
        let mut sum = u.clone();
        let mut p = u;
        let mut n = 1i64;
        loop {
            p = p.mul(&u2);
            let term = p.div_i64(2 * n + 1);
            if term.is_zero() || term.top_bit() < -(w as i64) - 4 {
                break;
            }
            sum = sum.add(&term);
            n += 1;
        }
        let kbits = 64 - k.unsigned_abs().leading_zeros();
        sum.mul_pow2(1)
            .add(&ln2(w + kbits + 8).mul_i64(k))
            .round(prec)
    }

    /// `(sin x, cos x)`, exactly odd/even in the sign of `x`.
    pub fn sin_cos(&self) -> (XFloat, XFloat) {
        let prec = self.prec;
        let neg = self.signum() < 0;
        let ax = self.abs();
        let approx = ax.to_f64();
        assert!(approx < 1e15, "XFloat::sin_cos argument too large");
        let q = (approx / std::f64::consts::FRAC_PI_2).round() as i64;
        let qbits = 64 - q.unsigned_abs().leading_zeros();
        let w = prec + 40 + qbits;
        let half_pi = pi(w + qbits + 8).mul_pow2(-1);
        let r = ax.round(w).sub(&half_pi.mul_i64(q));
        let r2 = r.mul(&r);
        let mut s = r.clone();
        let mut c = Self::one(w);
        let mut ts = r;
        let mut tc = Self::one(w);
        let mut k = 1i64;
        loop {
            tc = tc.mul(&r2).div_i64((2 * k - 1) * (2 * k)).neg();
            ts = ts.mul(&r2).div_i64((2 * k) * (2 * k + 1)).neg();
            let small = |t: &XFloat| t.is_zero() || t.top_bit() < -(w as i64) - 4;
            if small(&tc) && small(&ts) {
                break;
            }
            c = c.add(&tc);
            s = s.add(&ts);
            k += 1;
        }
        let (sn, cs) = match q.rem_euclid(4) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        };
        let sn = if neg { sn.neg() } else { sn };
        (sn.round(prec), cs.round(prec))
    }
}

fn atan_inv_fixed(k: u64, bits: usize, hyperbolic: bool) -> BigInt {
    let one = BigInt::one() << bits;
    let k2 = BigInt::from(k * k);
    let mut power = &one / BigInt::from(k);
    let mut sum = power.clone();
    let mut n = 1u64;
    loop {
        power = &power / &k2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * n + 1);
        if hyperbolic || n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        n += 1;
    }
    sum
}

fn cached(cell: &'static OnceLock<XFloat>, init: fn() -> XFloat, prec: u32) -> XFloat {
    assert!(prec <= STORE_PREC, "precision {prec} exceeds supported maximum");
    cell.get_or_init(init).round(prec)
}

/// π rounded to `prec` bits.
pub fn pi(prec: u32) -> XFloat {
    static PI: OnceLock<XFloat> = OnceLock::new();
    cached(
        &PI,
        || {
            let bits = STORE_PREC as usize + 64;
            let v = atan_inv_fixed(5, bits, false) * 16 - atan_inv_fixed(239, bits, false) * 4;
            normalize(v, -(bits as i64), STORE_PREC)
        },
        prec,
    )
}

/// ln 2 rounded to `prec` bits.
pub fn ln2(prec: u32) -> XFloat {
    static LN2: OnceLock<XFloat> = OnceLock::new();
    cached(
        &LN2,
        || {
            let bits = STORE_PREC as usize + 64;
            let v = atan_inv_fixed(3, bits, true) * 2;
            normalize(v, -(bits as i64), STORE_PREC)
        },
        prec,
    )
}

/// ½ ln(2π) rounded to `prec` bits.
pub fn half_ln_2pi(prec: u32) -> XFloat {
    static C: OnceLock<XFloat> = OnceLock::new();
    cached(
        &C,
        || pi(CONST_PREC).mul_pow2(1).ln().mul_pow2(-1),
        prec,
    )
}

/// Complex number with [`XFloat`] components.
#[derive(Clone, Debug)]
pub struct XComplex {
    pub re: XFloat,
    pub im: XFloat,
}

impl XComplex {
    pub fn zero(prec: u32) -> Self {
        XComplex { re: XFloat::zero(prec), im: XFloat::zero(prec) }
    }

    pub fn from_real(re: XFloat) -> Self {
        let p = re.prec();
        XComplex { re, im: XFloat::zero(p) }
    }

    /// `exp(ln_r) * (cos theta + i sin theta)`.
    pub fn from_log_polar(ln_r: &XFloat, theta: &XFloat) -> Self {
        let r = ln_r.exp();
        if theta.is_zero() {
            return Self::from_real(r);
        }
        let (s, c) = theta.sin_cos();
        XComplex { re: r.mul(&c), im: r.mul(&s) }
    }

    pub fn add(&self, o: &XComplex) -> XComplex {
        XComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn neg(&self) -> XComplex {
        XComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &XComplex) -> XComplex {
        if self.im.is_zero() && o.im.is_zero() {
            let p = self.re.prec().max(o.re.prec());
            return XComplex { re: self.re.mul(&o.re), im: XFloat::zero(p) };
        }
        XComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, k: &XFloat) -> XComplex {
        XComplex { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Base-2 logarithm of the modulus to roughly f64 accuracy.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * (1.0 + 2f64.powf(2.0 * (a.min(b) - m))).log2()
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn roundtrip_f64() {
        for v in [1.0, -2.5, 1e-300, std::f64::consts::PI, 1e300, 0.1] {
            assert_eq!(XFloat::from_f64(v, P).to_f64(), v);
        }
    }

    #[test]
    fn arithmetic() {
        let a = XFloat::from_f64(1.5, P);
        let b = XFloat::from_f64(-0.25, P);
        assert_eq!(a.add(&b).to_f64(), 1.25);
        assert_eq!(a.mul(&b).to_f64(), -0.375);
        assert_eq!(a.div(&b).to_f64(), -6.0);
        let third = XFloat::one(P).div_i64(3);
        assert!(third.mul_i64(3).sub(&XFloat::one(P)).top_bit() < -(P as i64) + 4);
    }

    #[test]
    fn constants_match_f64() {
        assert_eq!(pi(P).to_f64(), std::f64::consts::PI);
        assert_eq!(ln2(P).to_f64(), std::f64::consts::LN_2);
        assert!(close(half_ln_2pi(P).to_f64(), 0.918_938_533_204_672_8, 1e-16));
    }

    #[test]
    fn pi_digits() {
        // 10^40 * pi truncated
        let scaled = pi(400).mul(&XFloat::from_bigint(BigInt::from(10u32).pow(40), 400));
        let s = format!("{:.0}", scaled.to_f64());
        assert!(s.starts_with("314159265358979"));
        let x = XFloat::from_bigint(
            "31415926535897932384626433832795028841971".parse().unwrap(),
            400,
        );
        let diff = scaled.sub(&x);
        assert!(diff.to_f64().abs() < 1.0);
    }

    #[test]
    fn exp_ln_inverse() {
        for v in [-30.0, -1.0, 1e-5, 0.5, 2.0, 30.0, 700.0] {
            let x = XFloat::from_f64(v, P);
            let back = x.exp().ln();
            assert!(back.sub(&x).abs().top_bit() < -(P as i64) + 14, "v={v}");
            assert!(close(x.exp().to_f64(), f64::exp(v), 4e-16));
        }
    }

    #[test]
    fn sin_cos_values() {
        for v in [0.1, 1.0, -2.0, 10.0, 100.0, -1234.5] {
            let (s, c) = XFloat::from_f64(v, P).sin_cos();
            assert!((s.to_f64() - v.sin()).abs() < 1e-15, "v={v}");
            assert!((c.to_f64() - v.cos()).abs() < 1e-15, "v={v}");
            let one = s.mul(&s).add(&c.mul(&c)).sub(&XFloat::one(P));
            assert!(one.top_bit() < -(P as i64) + 8);
        }
    }

    #[test]
    fn sin_is_odd_exactly() {
        let (s1, c1) = XFloat::from_f64(2.7, P).sin_cos();
        let (s2, c2) = XFloat::from_f64(-2.7, P).sin_cos();
        assert!(s1.add(&s2).is_zero());
        assert!(c1.sub(&c2).is_zero());
    }
}

//! Exponential integral E₁ for real positive argument.
//!
//! Kept independent of the Mittag-Leffler machinery so that it can serve as a
//! cross-check of `Ein(x) = ln x + γ + E₁(x)`.

use crate::gamma::EULER_GAMMA;

/// E₁(x) for x > 0: power series below 1, Lentz continued fraction above.
pub fn e1(x: f64) -> f64 {
    assert!(x > 0.0, "e1 requires x > 0");
    if x < 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        let mut k = 1.0;
        loop {
            term *= -x / k;
            let add = term / k;
            sum += add;
            if add.abs() < 1e-18 * sum.abs() {
                break;
            }
            k += 1.0;
        }
        return -EULER_GAMMA - x.ln() - sum;
    }
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-17 {
            break;
        }
    }
    h * (-x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // mpmath.e1 at 50 digits
        let cases = [
            (0.5, 0.559_773_594_776_160_8),
            (1.0, 0.219_383_934_395_520_27),
            (2.0, 0.048_900_510_708_061_12),
            (5.0, 0.001_148_295_591_275_325_8),
            (10.0, 4.156_968_929_685_324e-6),
            (20.0, 9.835_525_290_649_882e-11),
        ];
        for (x, want) in cases {
            let got = e1(x);
            assert!(((got - want) / want).abs() < 2e-15, "x={x}: {got} vs {want}");
        }
    }
}

use mlein_core::expint::e1;
use mlein_core::gamma::{recip_gamma, EULER_GAMMA};
use mlein_core::series::{
    cin_series, ein_series, mittag_leffler, oracle_eval_digits, series_eval, sin_series,
    ExpansionParams, FunctionId,
};
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-16;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn ein_equals_log_plus_e1() {
    let p = ExpansionParams::ein(1.0, 1.0).unwrap();
    for x in [1.0f64, 2.0, 5.0, 10.0, 20.0, 35.0] {
        let v = ein_series(&p, re(x), TOL).unwrap().value;
        assert!(rel(v, re(x.ln() + EULER_GAMMA + e1(x))) < 1e-12, "x={x}");
    }
}

#[test]
fn ein_one_from_factorial_series() {
    // Σ (−1)^{n−1} / (n · n!), 25 terms
    let mut s = 0.0;
    let mut fact = 1.0;
    for n in 1..=25 {
        fact *= n as f64;
        let t = 1.0 / (n as f64 * fact);
        s += if n % 2 == 1 { t } else { -t };
    }
    let p = ExpansionParams::ein(1.0, 1.0).unwrap();
    let v = ein_series(&p, re(1.0), TOL).unwrap().value;
    assert!((s - 0.796_599_599_297_053_1).abs() < 3e-16);
    // mpmath: 0.79659959929705313...
    assert!((v.re - 0.796_599_599_297_053_1).abs() <= f64::EPSILON * 0.8);
}

#[test]
fn classical_sine_and_cosine_integrals() {
    // Si(π) and Cin(π) (mpmath)
    let p = ExpansionParams::ein(1.0, 1.0).unwrap();
    let si = sin_series(&p, re(std::f64::consts::PI), TOL).unwrap().value;
    let cin = cin_series(&p, re(std::f64::consts::PI), TOL).unwrap().value;
    assert!((si.re - 1.851_937_051_982_466_2).abs() < 1e-15);
    assert!((cin.re - 1.648_277_638_704_507_5).abs() < 1e-15);
}

#[test]
fn series_at_zero() {
    let p = ExpansionParams::ein(0.25, 4.0 / 3.0).unwrap();
    for f in [FunctionId::Ein, FunctionId::Sin, FunctionId::Cin] {
        assert_eq!(series_eval(f, &p, re(0.0), TOL).unwrap().value, re(0.0));
    }
}

#[test]
fn oracle_and_series_agree() {
    let p = ExpansionParams::ein(0.75, 4.0 / 3.0).unwrap();
    for f in [FunctionId::Ein, FunctionId::Sin, FunctionId::Cin] {
        for x in [2.0, 9.5, 22.0] {
            let s = series_eval(f, &p, re(x), TOL).unwrap().value;
            let o = oracle_eval_digits(f, &p, re(x), 50).unwrap();
            assert!(rel(s, o) < 1e-14, "{f} x={x}");
        }
    }
}

fn ein_derivative_integrand(alpha: f64, beta: f64, x: f64) -> f64 {
    // (1/Γ(β) − E_{α,β}(−x^α)) / x^α
    let u = x.powf(alpha);
    let e = mittag_leffler(alpha, beta, re(-u), TOL).unwrap().value.re;
    (recip_gamma(beta) - e) / u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sin_is_ein_with_doubled_alpha(alpha in 0.15f64..1.0, beta in 0.6f64..2.5, x in 0.5f64..25.0) {
        let ps = ExpansionParams::ein(alpha, beta).unwrap();
        let pe = ExpansionParams::ein(2.0 * alpha, beta - alpha).unwrap();
        let s = sin_series(&ps, re(x), TOL).unwrap().value;
        let e = ein_series(&pe, re(x), TOL).unwrap().value;
        prop_assert!(rel(s, e) < 1e-13);
    }

    #[test]
    fn ein_alpha_two_is_odd(beta in 0.2f64..3.0, x in 0.1f64..20.0) {
        let p = ExpansionParams::ein(2.0, beta).unwrap();
        let a = ein_series(&p, re(x), TOL).unwrap().value;
        let b = ein_series(&p, re(-x), TOL).unwrap().value;
        prop_assert!(rel(-b, a) < 1e-13);
    }

    #[test]
    fn series_conjugate_symmetry(alpha in 0.2f64..2.0, beta in 0.3f64..2.0, r in 0.5f64..15.0, t in 0.0f64..3.1) {
        let p = ExpansionParams::ein(alpha, beta).unwrap();
        let z = Complex64::from_polar(r, t);
        for f in [FunctionId::Ein, FunctionId::Sin, FunctionId::Cin] {
            let a = series_eval(f, &p, z, TOL).unwrap().value;
            let b = series_eval(f, &p, z.conj(), TOL).unwrap().value;
            prop_assert!((a - b.conj()).norm() <= 1e-14 * a.norm());
        }
    }

    #[test]
    fn derivative_matches_integrand(alpha in 0.2f64..2.0, beta in 0.5f64..2.0, x in 0.5f64..15.0) {
        let p = ExpansionParams::ein(alpha, beta).unwrap();
        let h = 1e-3 * x;
        let f = |t: f64| ein_series(&p, re(t), TOL).unwrap().value.re;
        let fd = (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
        let exact = ein_derivative_integrand(alpha, beta, x);
        prop_assume!(exact.abs() > 1e-6);
        prop_assert!(((fd - exact) / exact).abs() < 1e-6);
    }
}

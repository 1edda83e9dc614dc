#![allow(clippy::excessive_precision)]

use lateral_vdw::specialfn::{bessel_k_all, bessel_k_scaled_all};
use proptest::prelude::*;

// Frozen 20-digit values of K_0..K_3, from an arbitrary-precision evaluation.
const TABLE: [(f64, [f64; 4]); 8] = [
    (0.001, [7.0236888005623813436, 999.99623815608557428, 1999999.5000009717109, 7999999000.0001249998]),
    (0.1, [2.4270690247020166125, 9.8538447808706061348, 199.50396464211413931, 7990.0124304654361785]),
    (1.0, [0.42102443824070833334, 0.60190723019723457474, 1.6248388986351774828, 7.101262824737944506]),
    (2.0, [0.11389387274953343565, 0.13986588181652242728, 0.25375975456605586294, 0.64738539094863415316]),
    (2.5, [0.062347553200366186029, 0.073890816347747063649, 0.12146020627856383695, 0.26822714639344920277]),
    (7.0, [4.2479574186923180685e-4, 4.5418248688489697124e-4, 5.5456216669348808435e-4, 7.710751535668901623e-4]),
    (20.0, [5.7412378153365242927e-10, 5.8830579695570381777e-10, 6.3295436122922281105e-10, 7.1489666920154837997e-10]),
    (50.0, [3.4101677497894955139e-23, 3.4441022267175556126e-23, 3.5479318388581977384e-23, 3.7279367738262114317e-23]),
];

/// `e^x K_n(x) = ∫_0^∞ e^{-x (cosh t - 1)} cosh(n t) dt` by the trapezoid
/// rule, which converges geometrically for this smooth, rapidly decaying
/// integrand.
fn scaled_k_by_integral(n: u32, x: f64) -> f64 {
    let h: f64 = 0.005;
    let mut sum = 0.5;
    let mut t = h;
    loop {
        let term = (-x * (t.cosh() - 1.0)).exp() * (n as f64 * t).cosh();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        t += h;
    }
    sum * h
}

#[test]
fn matches_frozen_table() {
    for (x, want) in TABLE {
        let got = bessel_k_all(x).unwrap();
        for n in 0..4 {
            let rel = (got[n] / want[n] - 1.0).abs();
            assert!(rel < 1e-12, "K{n}({x}) = {} vs {} (rel {rel:.2e})", got[n], want[n]);
        }
    }
}

#[test]
fn matches_integral_representation() {
    for x in [0.05, 0.3, 1.0, 1.999, 2.001, 3.7, 9.0, 30.0, 120.0] {
        let got = bessel_k_scaled_all(x).unwrap();
        for n in 0..4u32 {
            let want = scaled_k_by_integral(n, x);
            let rel = (got[n as usize] / want - 1.0).abs();
            assert!(rel < 1e-11, "K{n}({x}) scaled: {} vs {want}", got[n as usize]);
        }
    }
}

proptest! {
    #[test]
    fn recurrence_and_ordering(x in 1e-3f64..200.0) {
        let k = bessel_k_all(x).unwrap();
        let s = bessel_k_scaled_all(x).unwrap();
        for n in 1..3 {
            let rhs = s[n - 1] + 2.0 * n as f64 / x * s[n];
            prop_assert!((s[n + 1] - rhs).abs() <= 1e-13 * s[n + 1]);
        }
        for n in 0..3 {
            prop_assert!(s[n] > 0.0 && s[n + 1] > s[n]);
        }
        let e = (-x).exp();
        for n in 0..4 {
            prop_assert!((k[n] - s[n] * e).abs() <= 1e-13 * s[n] * e + f64::MIN_POSITIVE);
        }
    }

    #[test]
    fn decreasing_in_argument(x in 1e-3f64..100.0, step in 1e-3f64..1.0) {
        let a = bessel_k_all(x).unwrap();
        let b = bessel_k_all(x + step).unwrap();
        for n in 0..4 {
            prop_assert!(b[n] < a[n]);
        }
    }
}

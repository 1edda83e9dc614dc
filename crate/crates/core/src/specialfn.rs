//! Modified Bessel functions of the second kind, integer orders 0 through 3.
//!
//! `K_0` and `K_1` come from their ascending series for `u <= 2` and from
//! Steed's continued fraction (Temme's CF2) above that. `K_2` and `K_3` follow
//! by upward recurrence, `K_{n+1} = K_{n-1} + (2n/u) K_n`, which is stable for
//! `K` because every term is positive and growing.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_SPLIT: f64 = 2.0;
const MAX_ITER: usize = 10_000;

/// Order of a modified Bessel function `K_n`; only `n = 0..=3` is needed here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselOrder {
    K0,
    K1,
    K2,
    K3,
}

impl BesselOrder {
    pub fn index(self) -> usize {
        match self {
            BesselOrder::K0 => 0,
            BesselOrder::K1 => 1,
            BesselOrder::K2 => 2,
            BesselOrder::K3 => 3,
        }
    }
}

impl TryFrom<u32> for BesselOrder {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        match n {
            0 => Ok(BesselOrder::K0),
            1 => Ok(BesselOrder::K1),
            2 => Ok(BesselOrder::K2),
            3 => Ok(BesselOrder::K3),
            _ => Err(Error::InvalidArgument(format!(
                "Bessel order {n} is outside the supported range 0..=3"
            ))),
        }
    }
}

/// `K_n(u)` for `u > 0`. Underflows to zero for very large `u`.
pub fn bessel_k(n: BesselOrder, u: f64) -> Result<f64> {
    Ok(bessel_k_all(u)?[n.index()])
}

/// `[K_0(u), K_1(u), K_2(u), K_3(u)]` from a single evaluation.
pub fn bessel_k_all(u: f64) -> Result<[f64; 4]> {
    check_argument(u)?;
    let (k0, k1) = if u <= SERIES_SPLIT {
        k0_k1_series(u)
    } else {
        let (s0, s1) = k0_k1_scaled_cf2(u);
        let e = (-u).exp();
        (s0 * e, s1 * e)
    };
    Ok(recur(u, k0, k1))
}

/// `e^u K_n(u)`, finite for arguments where `K_n` itself underflows.
pub fn bessel_k_scaled_all(u: f64) -> Result<[f64; 4]> {
    check_argument(u)?;
    let (k0, k1) = if u <= SERIES_SPLIT {
        let (a, b) = k0_k1_series(u);
        let e = u.exp();
        (a * e, b * e)
    } else {
        k0_k1_scaled_cf2(u)
    };
    Ok(recur(u, k0, k1))
}

/// `(K_2(u), K_3(u))`, the pair every kernel needs.
pub fn bessel_k2_k3(u: f64) -> Result<(f64, f64)> {
    let k = bessel_k_all(u)?;
    Ok((k[2], k[3]))
}

fn check_argument(u: f64) -> Result<()> {
    if u.is_nan() || u <= 0.0 {
        return Err(Error::Domain(format!(
            "modified Bessel K requires a positive argument, got {u}"
        )));
    }
    Ok(())
}

fn recur(u: f64, k0: f64, k1: f64) -> [f64; 4] {
    let k2 = k0 + 2.0 / u * k1;
    let k3 = k1 + 4.0 / u * k2;
    [k0, k1, k2, k3]
}

/// Ascending series, A&S 9.6.13 and 9.6.11 with n = 1.
fn k0_k1_series(x: f64) -> (f64, f64) {
    let y = 0.25 * x * x;
    let log_half = (0.5 * x).ln();

    // K0 = -(ln(x/2) + γ) I0 + Σ_{k>=1} H_k y^k / (k!)^2
    let mut term = 1.0; // y^k / (k!)^2
    let mut i0 = 1.0;
    let mut harmonic_sum = 0.0;
    let mut harmonic = 0.0;
    for k in 1..MAX_ITER {
        let kf = k as f64;
        term *= y / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        let inc = harmonic * term;
        harmonic_sum += inc;
        if term < f64::EPSILON * i0 && inc < f64::EPSILON * harmonic_sum.abs() {
            break;
        }
    }
    let k0 = -(log_half + EULER_GAMMA) * i0 + harmonic_sum;

    // K1 = 1/x + ln(x/2) I1 - (x/4) Σ_{k>=0} [ψ(k+1) + ψ(k+2)] y^k / (k! (k+1)!)
    let mut term = 1.0; // y^k / (k! (k+1)!)
    let mut h_k = 0.0; // H_k
    let mut i1_sum = 0.0;
    let mut psi_sum = 0.0;
    for k in 0..MAX_ITER {
        let kf = k as f64;
        if k > 0 {
            term *= y / (kf * (kf + 1.0));
            h_k += 1.0 / kf;
        }
        let h_k1 = h_k + 1.0 / (kf + 1.0);
        let psi = -2.0 * EULER_GAMMA + h_k + h_k1;
        i1_sum += term;
        psi_sum += psi * term;
        if term < f64::EPSILON * i1_sum && (psi * term).abs() < f64::EPSILON * psi_sum.abs() {
            break;
        }
    }
    let i1 = 0.5 * x * i1_sum;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * psi_sum;
    (k0, k1)
}

/// Steed's algorithm for Temme's second continued fraction at order zero.
/// Returns `(e^x K_0(x), e^x K_1(x))`.
fn k0_k1_scaled_cf2(x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive_arguments() {
        assert!(matches!(bessel_k(BesselOrder::K0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(BesselOrder::K2, -1.0), Err(Error::Domain(_))));
        assert!(bessel_k(BesselOrder::K1, f64::NAN).is_err());
    }

    #[test]
    fn order_conversion() {
        assert_eq!(BesselOrder::try_from(3).unwrap(), BesselOrder::K3);
        assert!(BesselOrder::try_from(4).is_err());
    }

    #[test]
    fn k2_at_one_matches_frozen_reference() {
        // 60-digit evaluation, frozen.
        let k2 = bessel_k(BesselOrder::K2, 1.0).unwrap();
        assert!((k2 / 1.624_838_898_635_177_5 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn k3_satisfies_recurrence() {
        for &u in &[0.01, 0.3, 1.0, 2.0, 2.000_001, 5.5, 17.0, 45.0] {
            let k = bessel_k_all(u).unwrap();
            let rhs = k[1] + 4.0 / u * k[2];
            assert!((k[3] - rhs).abs() <= 1e-14 * k[3]);
        }
    }

    #[test]
    fn small_argument_asymptotics() {
        let u = 1e-4;
        let k2 = bessel_k(BesselOrder::K2, u).unwrap();
        assert!((k2 * u * u / 2.0 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn large_argument_underflows_to_zero() {
        let k = bessel_k_all(800.0).unwrap();
        assert!(k.iter().all(|v| *v == 0.0));
        let s = bessel_k_scaled_all(800.0).unwrap();
        assert!(s.iter().all(|v| v.is_finite() && *v > 0.0));
    }

    #[test]
    fn series_and_continued_fraction_agree_at_the_split() {
        let (a0, a1) = k0_k1_series(2.0);
        let (s0, s1) = k0_k1_scaled_cf2(2.0);
        let e = (-2.0f64).exp();
        assert!((a0 / (s0 * e) - 1.0).abs() < 1e-13);
        assert!((a1 / (s1 * e) - 1.0).abs() < 1e-13);
    }
}

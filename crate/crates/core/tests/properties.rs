use std::f64::consts::PI;

use lateral_vdw::corrugation::{FourierProfile, Mode, SinusoidalProfile};
use lateral_vdw::dipole::{ClassicalDipole, DipoleTensor};
use lateral_vdw::energy::{self, Channel};
use lateral_vdw::kernels::{self, Family};
use lateral_vdw::media::{DielectricPair, GeometryPoint};
use lateral_vdw::regimes::{self, RegimeKind};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #[test]
    fn kernel_entries_have_fixed_phase(fam in prop_oneof![Just(Family::Cond), Just(Family::Diel)],
                                       qx in -8.0f64..8.0, qy in -8.0f64..8.0) {
        prop_assume!(qx.hypot(qy) > 1e-3);
        let m = kernels::kernel(fam, qx, qy).unwrap();
        let scale = m.max_norm();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        for (i, j) in [(0, 0), (1, 1), (2, 2), (0, 1)] {
            prop_assert!(m.get(i, j).im.abs() <= 1e-15 * scale);
        }
        for (i, j) in [(0, 2), (1, 2)] {
            prop_assert!(m.get(i, j).re.abs() <= 1e-15 * scale);
        }
    }

    #[test]
    fn rotated_profile_agrees_with_rotated_dipole(theta in 0.0f64..PI, phi in 0.0f64..2.0 * PI,
                                                  turn in 0.0f64..2.0 * PI, ratio in 0.05f64..8.0,
                                                  lambda in 0.3f64..6.0, x0 in -2.0f64..2.0) {
        // A sinusoid along x seen by a dipole equals the same sinusoid turned by `turn`
        // seen by the dipole turned by the same angle.
        let pair = DielectricPair::from_ratio(ratio).unwrap();
        let prof = SinusoidalProfile::new(0.01, lambda).unwrap();
        let at = GeometryPoint::new(x0, 0.0, 1.0).unwrap();
        let base = energy::u1_sinusoidal(Channel::Classical, &ClassicalDipole::new(1.0, theta, phi).unwrap().tensor(), &pair, &prof, &at).unwrap().value;
        let k = prof.k();
        let (s, c) = turn.sin_cos();
        let turned = FourierProfile::new(vec![Mode { qx: k * c, qy: k * s, amplitude: Complex64::new(0.01, 0.0) }]).unwrap();
        let at_turned = GeometryPoint::new(x0 * c, x0 * s, 1.0).unwrap();
        let d_turned = ClassicalDipole::new(1.0, theta, phi + turn).unwrap().tensor();
        let general = energy::u1_general(Channel::Classical, &d_turned, &pair, &turned, &at_turned).unwrap().value;
        let dec = energy::bc_decomposition(&ClassicalDipole::new(1.0, theta, phi).unwrap().tensor(), &pair, k).unwrap();
        let amp = pair.first_order_prefactor() * 0.03 / (512.0 * PI) * dec.amplitude;
        prop_assert!((general - base).abs() <= 1e-10 * amp + 1e-300, "{} vs {}", general, base);
    }

    #[test]
    fn superposition_is_additive(ratio in 0.05f64..8.0, a1 in 0.0f64..0.02, a2 in 0.0f64..0.02,
                                 x0 in -1.0f64..1.0, y0 in -1.0f64..1.0) {
        let pair = DielectricPair::from_ratio(ratio).unwrap();
        let d = DipoleTensor::uniaxial(1.0, 0.4, 0.7, 0.3).unwrap();
        let at = GeometryPoint::new(x0, y0, 1.0).unwrap();
        let p1 = FourierProfile::new(vec![Mode { qx: 2.0, qy: 0.0, amplitude: Complex64::new(a1, 0.0) }]).unwrap();
        let p2 = FourierProfile::new(vec![Mode { qx: 0.5, qy: 1.5, amplitude: Complex64::new(0.0, a2) }]).unwrap();
        let u = |p: &FourierProfile| energy::u1_general(Channel::Vdw, &d, &pair, p, &at).unwrap().value;
        let sum = u(&p1.superpose(&p2));
        prop_assert!((sum - u(&p1) - u(&p2)).abs() <= 1e-13 * (u(&p1).abs() + u(&p2).abs()) + 1e-300);
    }

    #[test]
    fn x_min_is_where_the_first_order_energy_is_lowest(theta in 0.0f64..PI, phi in 0.0f64..2.0 * PI,
                                                       ratio in 0.05f64..8.0, lambda in 0.3f64..6.0) {
        let pair = DielectricPair::from_ratio(ratio).unwrap();
        let d = ClassicalDipole::new(1.0, theta, phi).unwrap().tensor();
        let prof = SinusoidalProfile::new(0.01, lambda).unwrap();
        let dec = energy::bc_decomposition(&d, &pair, prof.k()).unwrap();
        prop_assume!(dec.amplitude > 1e-9);
        let xm = energy::x_min(&dec, &prof).unwrap();
        let u = |x: f64| energy::u1_sinusoidal(Channel::Classical, &d, &pair, &prof, &GeometryPoint::new(x, 0.0, 1.0).unwrap()).unwrap().value;
        let best = u(xm);
        for i in 0..64 {
            prop_assert!(u(lambda * i as f64 / 64.0) >= best - 1e-12 * best.abs());
        }
    }

    #[test]
    fn symmetric_slices_never_give_intermediate(phi in 0.0f64..2.0 * PI, ratio in 0.05f64..8.0,
                                                lambda in 0.3f64..6.0) {
        let pair = DielectricPair::from_ratio(ratio).unwrap();
        for theta in [0.0, PI / 2.0, PI] {
            let d = ClassicalDipole::new(1.0, theta, phi).unwrap().tensor();
            let dec = energy::bc_decomposition(&d, &pair, 2.0 * PI / lambda).unwrap();
            let kind = regimes::classify(&dec, regimes::B_ZERO_TOL).kind;
            prop_assert!(kind != RegimeKind::Intermediate);
        }
    }

    #[test]
    fn isotropic_never_valley_below_unit_ratio(ratio in 0.01f64..0.999, lambda in 0.05f64..20.0) {
        let pair = DielectricPair::from_ratio(ratio).unwrap();
        let d = DipoleTensor::isotropic(1.0).unwrap();
        let dec = energy::bc_decomposition(&d, &pair, 2.0 * PI / lambda).unwrap();
        prop_assert_eq!(regimes::classify(&dec, regimes::B_ZERO_TOL).kind, RegimeKind::Peak);
    }
}

use std::time::Instant;

use lateral_vdw::corrugation::SinusoidalProfile;
use lateral_vdw::dipole::DipoleTensor;
use lateral_vdw::energy::{self, Channel};
use lateral_vdw::kernels::{self, Family};
use lateral_vdw::media::{DielectricPair, GeometryPoint};
use lateral_vdw::oracle;

#[test]
fn quadrature_kernels_match_closed_form() {
    for fam in Family::ALL {
        for u in [0.5, 1.0, 2.0, 5.0] {
            for angle in [0.0, 0.9] {
                let (qx, qy) = (u * f64::cos(angle), u * f64::sin(angle));
                let exact = kernels::kernel(fam, qx, qy).unwrap();
                let brute = oracle::kernel_by_quadrature(fam, qx, qy).unwrap();
                let scale = exact.max_norm();
                for i in 0..3 {
                    for j in 0..3 {
                        let err = (exact.get(i, j) - brute.get(i, j)).norm();
                        assert!(
                            err <= 1e-6 * scale,
                            "{} u={u} angle={angle} ({i},{j}): {} vs {}",
                            fam.name(),
                            exact.get(i, j),
                            brute.get(i, j)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn finite_difference_energy_matches_closed_form() {
    let started = Instant::now();
    let d = DipoleTensor::from_rows([[0.5, 0.0, 0.2], [0.0, 0.3, 0.0], [0.2, 0.0, 0.4]]).unwrap();
    let cases = [
        (DielectricPair::new(3.0, 1.0).unwrap(), 0.05, 2.5, 0.4),
        (DielectricPair::new(1.0, 4.0).unwrap(), 0.02, 1.0, 0.1),
        (DielectricPair::conductor(1.0).unwrap(), 0.03, 6.0, 1.3),
    ];
    for (pair, a, lambda, x0) in cases {
        let prof = SinusoidalProfile::new(a, lambda).unwrap();
        let at = GeometryPoint::new(x0, 0.2, 1.0).unwrap();
        let parts = oracle::finite_difference_parts(&d, &pair, &prof, &at).unwrap();
        let u0 = energy::u0(Channel::Classical, &d, &pair, 1.0).unwrap().value;
        let u1 = energy::u1_sinusoidal(Channel::Classical, &d, &pair, &prof, &at).unwrap().value;
        let e0 = (parts.zeroth / u0 - 1.0).abs();
        let e1 = (parts.first - u1).abs() / u1.abs().max(1e-3 * u0.abs());
        let et = (parts.total() / (u0 + u1) - 1.0).abs();
        eprintln!("eps1={} a={a} lambda={lambda}: e0 {e0:.2e} e1 {e1:.2e} total {et:.2e}", pair.eps1());
        assert!(et <= 1e-4);
        assert!(e1 <= 1e-4);
    }
    eprintln!("finite-difference cases took {:?}", started.elapsed());
}

#[test]
fn tilted_dipole_configuration_and_linearity_in_amplitude() {
    let pair = DielectricPair::from_ratio(0.5).unwrap();
    let d = lateral_vdw::dipole::ClassicalDipole::new(1.0, std::f64::consts::FRAC_PI_4, 0.0).unwrap().tensor();
    let at = GeometryPoint::new(0.6, 0.0, 1.0).unwrap();
    let small = SinusoidalProfile::new(0.01, 2.0).unwrap();
    let large = SinusoidalProfile::new(0.02, 2.0).unwrap();
    let fd = |p: &SinusoidalProfile| oracle::energy_by_finite_difference(Channel::Classical, &d, &pair, p, &at).unwrap().value;
    let (e1, e2) = (fd(&small), fd(&large));
    let exact = energy::total_sinusoidal(Channel::Classical, &d, &pair, &small, &at).unwrap().value;
    assert!((e1 / exact - 1.0).abs() <= 1e-4, "{e1} vs {exact}");
    let first = energy::u1_sinusoidal(Channel::Classical, &d, &pair, &small, &at).unwrap().value;
    assert!(((e2 - e1) / first - 1.0).abs() <= 1e-3, "{} vs {first}", e2 - e1);
}

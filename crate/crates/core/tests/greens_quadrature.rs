use std::f64::consts::PI;

use lateral_vdw::corrugation::{FourierProfile, Mode, SinusoidalProfile};
use lateral_vdw::greens;
use lateral_vdw::media::{DielectricPair, GeometryPoint};
use num_complex::Complex64;
use rayon::prelude::*;

/// `∫ d²q/(2π)² e^{iq·r∥} ℊ1(q, z)` on a dense Cartesian grid, offset by half
/// a cell so no node lands on a kink.
fn g1_by_trapezoid(r: &GeometryPoint, s: &GeometryPoint, pair: &DielectricPair, profile: &FourierProfile) -> f64 {
    let h = 0.02;
    let extent = 36.0 / (r.z0() + s.z0());
    let n = (2.0 * extent / h) as i64;
    let total: Complex64 = (0..n)
        .into_par_iter()
        .map(|i| {
            let qx = -extent + (i as f64 + 0.5) * h;
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let qy = -extent + (j as f64 + 0.5) * h;
                let g = greens::g1_fourier([qx, qy], r.z0(), s, pair, profile).unwrap().value;
                row += g * Complex64::from_polar(1.0, qx * r.x0 + qy * r.y0);
            }
            row
        })
        .sum();
    (total * h * h / (4.0 * PI * PI)).re
}

#[test]
fn g1_matches_dense_grid() {
    let pair = DielectricPair::new(3.0, 1.2).unwrap();
    let r = GeometryPoint::new(0.3, -0.2, 1.1).unwrap();
    let s = GeometryPoint::new(-0.1, 0.25, 0.9).unwrap();
    let profiles = [
        SinusoidalProfile::new(0.04, 1.7).unwrap().to_fourier(),
        FourierProfile::new(vec![
            Mode { qx: 1.1, qy: 0.6, amplitude: Complex64::new(0.02, 0.01) },
            Mode { qx: 0.0, qy: 2.3, amplitude: Complex64::new(-0.015, 0.0) },
        ])
        .unwrap(),
    ];
    for profile in &profiles {
        let fast = greens::g1_real(&r, &s, &pair, profile).unwrap();
        let dense = g1_by_trapezoid(&r, &s, &pair, profile);
        assert!((fast / dense - 1.0).abs() < 1e-4, "{fast} vs {dense}");
    }
}

#[test]
fn homogeneous_part_is_image_plus_correction() {
    let pair = DielectricPair::new(1.0, 2.5).unwrap();
    let r = GeometryPoint::new(0.0, 0.1, 0.7).unwrap();
    let s = GeometryPoint::new(0.2, 0.0, 1.3).unwrap();
    let profile = SinusoidalProfile::new(0.03, 2.2).unwrap().to_fourier();
    let gh = greens::gh_homogeneous(&r, &s, &pair, &profile).unwrap();
    let dense = greens::image_term(r.as_array(), &s, &pair) + g1_by_trapezoid(&r, &s, &pair, &profile);
    assert!((gh / dense - 1.0).abs() < 1e-4, "{gh} vs {dense}");
}

#[test]
fn first_order_vanishes_for_matched_media() {
    let pair = DielectricPair::new(2.0, 2.0).unwrap();
    let r = GeometryPoint::new(0.0, 0.0, 1.0).unwrap();
    let profile = SinusoidalProfile::new(0.05, 1.0).unwrap().to_fourier();
    assert_eq!(greens::g1_real(&r, &r, &pair, &profile).unwrap(), 0.0);
}

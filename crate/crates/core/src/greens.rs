//! Electrostatic Green function of the corrugated two-medium geometry,
//! to first order in the corrugation.
//!
//! Fourier conventions: `f(r∥) = ∫ d²q/(2π)² e^{i q·r∥} f(q)`. Medium `eps1`
//! fills `z < h(r∥)`, medium `eps2` (holding the source) fills the rest.
//! A field point with a negative-signed `z` (including `-0.0`) selects the
//! lower-medium solution.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::corrugation::{FourierProfile, SpectralLine};
use crate::error::{Error, Result};
use crate::media::{DielectricPair, GeometryPoint};
use crate::quad;

/// Which side of the mean interface a field point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Below,
    Above,
}

impl Branch {
    pub fn of(z: f64) -> Branch {
        if z.is_sign_negative() {
            Branch::Below
        } else {
            Branch::Above
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierGreenEval {
    pub value: Complex64,
    pub branch: Branch,
}

fn norm2(q: [f64; 2]) -> f64 {
    q[0].hypot(q[1])
}

fn phase(q: [f64; 2], r: [f64; 2]) -> Complex64 {
    Complex64::from_polar(1.0, q[0] * r[0] + q[1] * r[1])
}

/// Planar Fourier-space Green function `ℊ0(q, z; r')`.
pub fn g0_fourier(
    q: [f64; 2],
    z: f64,
    source: &GeometryPoint,
    pair: &DielectricPair,
) -> Result<FourierGreenEval> {
    let qn = norm2(q);
    if !(qn > 0.0) || !qn.is_finite() {
        return Err(Error::Domain(format!("g0_fourier needs |q| > 0, got {q:?}")));
    }
    let zp = source.z0();
    let shift = phase(q, [source.x0, source.y0]).conj();
    let branch = Branch::of(z);
    let value = match branch {
        Branch::Below => {
            shift * (4.0 * PI / ((pair.eps1() + pair.eps2()) * qn) * (-qn * (zp - z)).exp())
        }
        Branch::Above => {
            let direct = (-qn * (z - zp).abs()).exp();
            let image = pair.contrast() * (-qn * (z + zp)).exp();
            shift * (2.0 * PI / (pair.eps2() * qn) * (direct - image))
        }
    };
    Ok(FourierGreenEval { value, branch })
}

/// Planar Green function in real space.
pub fn g0_real(r: [f64; 3], source: &GeometryPoint, pair: &DielectricPair) -> Result<f64> {
    let rp = source.as_array();
    let dist = ((r[0] - rp[0]).powi(2) + (r[1] - rp[1]).powi(2) + (r[2] - rp[2]).powi(2)).sqrt();
    if dist == 0.0 {
        return Err(Error::Domain("g0_real is singular at coincident points".into()));
    }
    Ok(match Branch::of(r[2]) {
        Branch::Below => 2.0 / ((pair.eps1() + pair.eps2()) * dist),
        Branch::Above => 1.0 / (pair.eps2() * dist) + image_term(r, source, pair),
    })
}

/// The image part of the planar solution above the interface,
/// `-(contrast/eps2) / sqrt(ρ² + (z + z')²)`.
pub fn image_term(r: [f64; 3], source: &GeometryPoint, pair: &DielectricPair) -> f64 {
    let rp = source.as_array();
    let rho2 = (r[0] - rp[0]).powi(2) + (r[1] - rp[1]).powi(2);
    let s = r[2] + rp[2];
    -pair.contrast() / pair.eps2() / (rho2 + s * s).sqrt()
}

/// `4π (eps1 - eps2) / (eps1 + eps2)²`, the strength of the first-order source.
fn first_order_strength(pair: &DielectricPair) -> f64 {
    let s = pair.eps1() + pair.eps2();
    4.0 * PI * (pair.eps1() - pair.eps2()) / (s * s)
}

/// First-order Fourier-space correction `ℊ1(q, z; r')`.
///
/// With a discrete spectrum the inner momentum integral collapses onto the
/// lines, `q' = q - Q_j`.
pub fn g1_fourier(
    q: [f64; 2],
    z: f64,
    source: &GeometryPoint,
    pair: &DielectricPair,
    profile: &FourierProfile,
) -> Result<FourierGreenEval> {
    let qn = norm2(q);
    if !(qn > 0.0) || !qn.is_finite() {
        return Err(Error::Domain(format!("g1_fourier needs |q| > 0, got {q:?}")));
    }
    let branch = Branch::of(z);
    let strength = first_order_strength(pair);
    let zp = source.z0();
    let mut sum = Complex64::new(0.0, 0.0);
    for line in profile.spectrum() {
        let qp = [q[0] - line.q[0], q[1] - line.q[1]];
        let qpn = norm2(qp);
        if qpn == 0.0 {
            return Err(Error::Domain(format!(
                "g1_fourier is undefined where q coincides with a profile wavevector {:?}",
                line.q
            )));
        }
        let cos = (qp[0] * q[0] + qp[1] * q[1]) / (qpn * qn);
        let p = line.weight * strength * phase(qp, [source.x0, source.y0]).conj() * (-qpn * zp).exp();
        let bracket = match branch {
            Branch::Below => 1.0 - cos,
            Branch::Above => -(cos + pair.eps1() / pair.eps2()),
        };
        sum += p * bracket;
    }
    let envelope = match branch {
        Branch::Below => (qn * z).exp(),
        Branch::Above => (-qn * z).exp(),
    };
    Ok(FourierGreenEval { value: sum * envelope, branch })
}

const G1_REL_TOL: f64 = 1e-10;
const IMAG_REL_TOL: f64 = 1e-8;

/// First-order real-space correction `G1(r, r')` for `z, z' > 0`, by
/// inverse transform of [`g1_fourier`] over the plane.
pub fn g1_real(
    r: &GeometryPoint,
    source: &GeometryPoint,
    pair: &DielectricPair,
    profile: &FourierProfile,
) -> Result<f64> {
    let lines = profile.spectrum();
    if lines.is_empty() {
        return Ok(0.0);
    }
    let strength = first_order_strength(pair);
    let (z, zp) = (r.z0(), source.z0());
    let decay = z + zp;
    let rho = [r.x0 - source.x0, r.y0 - source.y0];
    let eps_ratio = pair.eps1() / pair.eps2();
    let mut total = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    // Size of the raw integral when the phase factors line up.
    let raw_scale = 2.0 * PI * (1.0 + eps_ratio) / (decay * decay);
    for line in &lines {
        let coeff = -strength * line.weight * phase(line.q, [source.x0, source.y0]) / (4.0 * PI * PI);
        scale += coeff.norm() * raw_scale;
        let [v] = quad::integrate_checked([0.0, 0.0], line.q, decay, G1_REL_TOL, raw_scale, |q| {
            [g1_real_integrand(q, line, rho, z, zp, eps_ratio)]
        })?;
        total += coeff * v;
    }
    if total.im.abs() > IMAG_REL_TOL * scale.max(total.re.abs()) {
        return Err(Error::Numerical(format!(
            "G1 came out complex: imaginary part {:.3e} against real part {:.3e}",
            total.im, total.re
        )));
    }
    Ok(total.re)
}

/// `e^{i q·ρ} e^{-|q| z - |q - Q| z'} [q̂'·q̂ + eps1/eps2]` with `q' = q - Q`.
fn g1_real_integrand(
    q: [f64; 2],
    line: &SpectralLine,
    rho: [f64; 2],
    z: f64,
    zp: f64,
    eps_ratio: f64,
) -> Complex64 {
    let qn = norm2(q);
    let qp = [q[0] - line.q[0], q[1] - line.q[1]];
    let qpn = norm2(qp);
    let cos = if qn > 0.0 && qpn > 0.0 {
        (q[0] * qp[0] + q[1] * qp[1]) / (qn * qpn)
    } else {
        0.0
    };
    phase(q, rho) * ((-qn * z - qpn * zp).exp() * (cos + eps_ratio))
}

/// Homogeneous part of the Green function above the interface: planar image
/// term plus the first-order correction.
pub fn gh_homogeneous(
    r: &GeometryPoint,
    source: &GeometryPoint,
    pair: &DielectricPair,
    profile: &FourierProfile,
) -> Result<f64> {
    Ok(image_term(r.as_array(), source, pair) + g1_real(r, source, pair, profile)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corrugation::{Mode, SinusoidalProfile};

    fn pair() -> DielectricPair {
        DielectricPair::new(3.0, 1.5).unwrap()
    }

    fn src() -> GeometryPoint {
        GeometryPoint::new(0.2, -0.1, 0.8).unwrap()
    }

    fn profile() -> FourierProfile {
        FourierProfile::new(vec![Mode { qx: 2.0, qy: 0.7, amplitude: Complex64::new(0.03, -0.01) }])
            .unwrap()
    }

    #[test]
    fn g0_rejects_zero_momentum() {
        assert!(g0_fourier([0.0, 0.0], 0.5, &src(), &pair()).is_err());
    }

    #[test]
    fn g0_continuity_and_flux() {
        let (s, p) = (src(), pair());
        for q in [[0.3, 0.0], [1.2, -0.7], [0.05, 2.0]] {
            let below = g0_fourier(q, -0.0, &s, &p).unwrap().value;
            let above = g0_fourier(q, 0.0, &s, &p).unwrap().value;
            assert!((below - above).norm() <= 1e-14 * above.norm());
            let h = 1e-4;
            let at = |z: f64| g0_fourier(q, z, &s, &p).unwrap().value;
            let d_below = (3.0 * below - 4.0 * at(-h) + at(-2.0 * h)) / (2.0 * h);
            let d_above = (-3.0 * above + 4.0 * at(h) - at(2.0 * h)) / (2.0 * h);
            let residual = (d_below * p.eps1() - d_above * p.eps2()).norm();
            assert!(residual <= 1e-6 * (d_above * p.eps2()).norm(), "{residual}");
        }
    }

    #[test]
    fn g0_without_interface_is_free_space() {
        let p = DielectricPair::new(2.0, 2.0).unwrap();
        let s = src();
        let q = [0.4, 0.9];
        let v = g0_fourier(q, 1.3, &s, &p).unwrap().value;
        let qn = norm2(q);
        let free = phase(q, [s.x0, s.y0]).conj() * (2.0 * PI / (2.0 * qn) * (-qn * 0.5).exp());
        assert!((v - free).norm() < 1e-15);
        let r = [1.0, 0.5, 0.3];
        let d = ((0.8f64).powi(2) + 0.6f64.powi(2) + 0.5f64.powi(2)).sqrt();
        assert!((g0_real(r, &s, &p).unwrap() - 1.0 / (2.0 * d)).abs() < 1e-15);
    }

    #[test]
    fn g0_real_conductor_limit() {
        let p = DielectricPair::conductor(1.0).unwrap();
        let s = GeometryPoint::new(0.0, 0.0, 1.0).unwrap();
        let v = g0_real([0.0, 0.0, 2.0], &s, &p).unwrap();
        assert!((v - (1.0 - 1.0 / 3.0)).abs() < 1e-7);
        assert!(g0_real([0.0, 0.0, 1.0], &s, &p).is_err());
    }

    #[test]
    fn g0_real_matches_inverse_transform() {
        let (s, p) = (src(), pair());
        let r = [0.9, 0.4, 1.6];
        let res = quad::Resolution { radial_panels: 40, angular_panels: 24, order: 20 };
        let rule = quad::PlaneRule::two_center([0.0; 2], [0.0; 2], r[2] - s.z0(), res).unwrap();
        let v = rule.integrate(|q| {
            let g = g0_fourier(q, r[2], &s, &p).map(|g| g.value).unwrap_or_default();
            g * phase(q, [r[0], r[1]])
        }) / (4.0 * PI * PI);
        let expect = g0_real(r, &s, &p).unwrap();
        assert!(v.im.abs() < 1e-10);
        assert!((v.re / expect - 1.0).abs() < 1e-4, "{} vs {expect}", v.re);
    }

    #[test]
    fn g1_vanishes_for_flat_or_matched_media() {
        let s = src();
        let q = [0.7, 0.2];
        assert_eq!(g1_fourier(q, 0.5, &s, &pair(), &FourierProfile::flat()).unwrap().value.norm(), 0.0);
        let same = DielectricPair::new(2.0, 2.0).unwrap();
        assert_eq!(g1_fourier(q, 0.5, &s, &same, &profile()).unwrap().value.norm(), 0.0);
        let r = GeometryPoint::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(g1_real(&r, &s, &pair(), &FourierProfile::flat()).unwrap(), 0.0);
    }

    #[test]
    fn g1_jump_conditions() {
        let (s, p, prof) = (src(), pair(), profile());
        let lines = prof.spectrum();
        let h = 1e-6;
        for q in [[0.4, 0.3], [-1.1, 0.8], [2.5, -0.2]] {
            let g = |z: f64| g1_fourier(q, z, &s, &p, &prof).unwrap().value;
            let g0 = |q: [f64; 2], z: f64| g0_fourier(q, z, &s, &p).unwrap().value;
            // value jump
            let mut rhs = Complex64::new(0.0, 0.0);
            for l in &lines {
                let qp = [q[0] - l.q[0], q[1] - l.q[1]];
                let d_above = (g0(qp, h) - g0(qp, 0.0)) / h;
                let d_below = (g0(qp, -0.0) - g0(qp, -h)) / h;
                rhs -= l.weight * (d_above - d_below);
            }
            let lhs = g(0.0) - g(-0.0);
            assert!((lhs - rhs).norm() <= 1e-5 * rhs.norm(), "{lhs} vs {rhs}");
            // flux jump
            let mut rhs = Complex64::new(0.0, 0.0);
            for l in &lines {
                let qp = [q[0] - l.q[0], q[1] - l.q[1]];
                rhs += l.weight * (q[0] * qp[0] + q[1] * qp[1]) * g0(qp, 0.0);
            }
            rhs *= p.eps1() - p.eps2();
            let d_above = (g(h) - g(0.0)) / h;
            let d_below = (g(-0.0) - g(-h)) / h;
            let lhs = d_above * p.eps2() - d_below * p.eps1();
            assert!((lhs - rhs).norm() <= 1e-5 * rhs.norm(), "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn g1_decays_away_from_interface() {
        let (s, p, prof) = (src(), pair(), profile());
        let q = [0.9, -0.4];
        let qn = norm2(q);
        for z in [0.5, 1.0, 3.0, -0.5, -2.0] {
            let v = g1_fourier(q, z, &s, &p, &prof).unwrap().value.norm();
            let at_interface = g1_fourier(q, z.signum() * 0.0, &s, &p, &prof).unwrap().value.norm();
            assert!(v <= at_interface * (-qn * z.abs()).exp() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn gh_flat_is_image_term() {
        let (s, p) = (src(), pair());
        let r = GeometryPoint::new(0.5, 0.1, 1.2).unwrap();
        let v = gh_homogeneous(&r, &s, &p, &FourierProfile::flat()).unwrap();
        assert_eq!(v, image_term(r.as_array(), &s, &p));
    }

    #[test]
    fn gh_reciprocity() {
        let p = pair();
        let prof = SinusoidalProfile::new(0.05, 2.0).unwrap().to_fourier().superpose(&profile());
        let a = GeometryPoint::new(0.3, 0.2, 0.9).unwrap();
        let b = GeometryPoint::new(-0.4, 0.5, 1.3).unwrap();
        let ab = gh_homogeneous(&a, &b, &p, &prof).unwrap();
        let ba = gh_homogeneous(&b, &a, &p, &prof).unwrap();
        let g1 = g1_real(&a, &b, &p, &prof).unwrap();
        assert!((ab - ba).abs() <= 1e-9 * g1.abs(), "{ab} vs {ba}");
    }
}

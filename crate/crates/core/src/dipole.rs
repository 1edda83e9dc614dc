//! Dipole moments and dipole-correlation tensors.
//!
//! Both energy channels consume the same symmetric 3x3 tensor `D`: the outer
//! product `d_i d_j` of a permanent dipole in the classical channel, or the
//! ground-state correlation `<d_i d_j>` in the van der Waals channel.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-12;

/// `sin_cos` that returns exact zeros and ones at multiples of π/2, so
/// orientations on a symmetry plane give exactly vanishing off-diagonal terms.
fn axis_sin_cos(angle: f64) -> (f64, f64) {
    let m = angle / FRAC_PI_2;
    let n = m.round();
    if (m - n).abs() > 1e-14 * n.abs().max(1.0) {
        return angle.sin_cos();
    }
    match (n as i64).rem_euclid(4) {
        0 => (0.0, 1.0),
        1 => (1.0, 0.0),
        2 => (0.0, -1.0),
        _ => (-1.0, 0.0),
    }
}

/// Permanent dipole in spherical coordinates (`theta` from z, `phi` from x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalDipole {
    magnitude: f64,
    pub theta: f64,
    pub phi: f64,
}

impl ClassicalDipole {
    pub fn new(magnitude: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(magnitude.is_finite() && magnitude > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "dipole magnitude must be positive, got {magnitude}"
            )));
        }
        if !(theta.is_finite() && phi.is_finite()) {
            return Err(Error::InvalidArgument("dipole angles must be finite".into()));
        }
        Ok(Self { magnitude, theta, phi })
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    /// `(|d| sin(theta) cos(phi), |d| sin(theta) sin(phi), |d| cos(theta))`.
    pub fn components(&self) -> [f64; 3] {
        let (st, ct) = axis_sin_cos(self.theta);
        let (sp, cp) = axis_sin_cos(self.phi);
        [self.magnitude * st * cp, self.magnitude * st * sp, self.magnitude * ct]
    }

    pub fn tensor(&self) -> DipoleTensor {
        let d = Vector3::from(self.components());
        DipoleTensor(d * d.transpose())
    }
}

/// Scalar `f(eps2) > 0` carrying the host-medium dependence of the polarizability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingFactor(f64);

impl EmbeddingFactor {
    pub fn new(f: f64) -> Result<Self> {
        if !(f.is_finite() && f > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "embedding factor must be positive, got {f}"
            )));
        }
        Ok(Self(f))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl Default for EmbeddingFactor {
    fn default() -> Self {
        Self(1.0)
    }
}

/// Symmetric positive-semidefinite tensor `D_ij` (`d_i d_j` or `<d_i d_j>`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleTensor(Matrix3<f64>);

impl DipoleTensor {
    /// Validates symmetry and positive semidefiniteness, then symmetrizes.
    pub fn from_matrix(m: Matrix3<f64>) -> Result<Self> {
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("dipole tensor has non-finite entries".into()));
        }
        let scale = m.abs().max().max(f64::MIN_POSITIVE);
        let asym = (m - m.transpose()).abs().max();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::InvalidArgument(format!(
                "dipole tensor is not symmetric (max asymmetry {asym:e})"
            )));
        }
        let sym = (m + m.transpose()) * 0.5;
        let min_eig = SymmetricEigen::new(sym).eigenvalues.min();
        if min_eig < -PSD_TOL * scale {
            return Err(Error::InvalidArgument(format!(
                "dipole tensor is not positive semidefinite (eigenvalue {min_eig:e})"
            )));
        }
        Ok(Self(sym))
    }

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Result<Self> {
        Self::from_matrix(Matrix3::from_fn(|i, j| rows[i][j]))
    }

    pub fn diagonal(dxx: f64, dyy: f64, dzz: f64) -> Result<Self> {
        Self::from_matrix(Matrix3::from_diagonal(&Vector3::new(dxx, dyy, dzz)))
    }

    /// `<d^2>` times the identity.
    pub fn isotropic(d2: f64) -> Result<Self> {
        if !(d2.is_finite() && d2 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "isotropic <d^2> must be positive, got {d2}"
            )));
        }
        Ok(Self(Matrix3::identity() * d2))
    }

    /// Uniaxial particle with principal value `dp2` along the unit vector
    /// `(sin(theta) cos(phi), sin(theta) sin(phi), cos(theta))` and `dn2`
    /// in the two transverse directions.
    ///
    /// The frame rotation maps the body x axis onto that direction, so
    /// `theta = pi/2, phi = 0` leaves the principal axis on x.
    pub fn uniaxial(dp2: f64, dn2: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(dn2.is_finite() && dn2 > 0.0 && dp2.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "principal values must be positive, got dp2={dp2}, dn2={dn2}"
            )));
        }
        if dn2 > dp2 {
            return Err(Error::InvalidArgument(format!(
                "uniaxial tensor requires dp2 >= dn2, got dp2={dp2}, dn2={dn2}"
            )));
        }
        let (st, ct) = axis_sin_cos(theta);
        let (sp, cp) = axis_sin_cos(phi);
        let n = Vector3::new(st * cp, st * sp, ct);
        Ok(Self(Matrix3::identity() * dn2 + n * n.transpose() * (dp2 - dn2)))
    }

    /// `f * (hbar/pi) * integral of alpha0(i xi) d xi` by the trapezoid rule,
    /// with `hbar/pi = 1`.
    pub fn from_polarizability(
        samples: &[PolarizabilitySample],
        factor: EmbeddingFactor,
    ) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "polarizability integration needs at least two samples, got {}",
                samples.len()
            )));
        }
        for w in samples.windows(2) {
            if !(w[1].xi > w[0].xi) {
                return Err(Error::InvalidArgument(format!(
                    "imaginary-frequency grid must be strictly increasing ({} then {})",
                    w[0].xi, w[1].xi
                )));
            }
        }
        if samples[0].xi < 0.0 {
            return Err(Error::InvalidArgument("imaginary frequencies must be non-negative".into()));
        }
        let mats = samples
            .iter()
            .map(|s| DipoleTensor::from_rows(s.alpha).map(|t| t.0))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = Matrix3::zeros();
        for (w, m) in samples.windows(2).zip(mats.windows(2)) {
            acc += (m[0] + m[1]) * (0.5 * (w[1].xi - w[0].xi));
        }
        Self::from_matrix(acc * factor.value())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    /// `D_xx + D_yy + 2 D_zz`, the combination entering the planar energy.
    pub fn planar_weight(&self) -> f64 {
        self.0[(0, 0)] + self.0[(1, 1)] + 2.0 * self.0[(2, 2)]
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidArgument(format!("scale must be positive, got {c}")));
        }
        Ok(Self(self.0 * c))
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        let e = SymmetricEigen::new(self.0).eigenvalues;
        [e[0], e[1], e[2]]
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let m = &self.0;
        [
            [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
            [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
            [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
        ]
    }
}

/// One point `alpha0_ij(i xi)` of the vacuum polarizability on the imaginary axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarizabilitySample {
    pub xi: f64,
    #[serde(with = "alpha_repr")]
    pub alpha: [[f64; 3]; 3],
}

/// Parse a JSON array of `{xi, alpha}` samples; `alpha` may be nested 3x3 or
/// a flat row-major list of nine numbers.
pub fn parse_polarizability_json(text: &str) -> Result<Vec<PolarizabilitySample>> {
    serde_json::from_str(text)
        .map_err(|e| Error::InvalidArgument(format!("polarizability samples: {e}")))
}

mod alpha_repr {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Nested([[f64; 3]; 3]),
        Flat([f64; 9]),
    }

    pub fn serialize<S: Serializer>(v: &[[f64; 3]; 3], s: S) -> Result<S::Ok, S::Error> {
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[[f64; 3]; 3], D::Error> {
        Ok(match Repr::deserialize(d)? {
            Repr::Nested(m) => m,
            Repr::Flat(f) => [[f[0], f[1], f[2]], [f[3], f[4], f[5]], [f[6], f[7], f[8]]],
        })
    }
}

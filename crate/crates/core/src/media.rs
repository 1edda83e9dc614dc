//! Dielectric configuration and the permittivity prefactors shared by the
//! classical and van der Waals energies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vacuum permittivity in F/m, used only for SI conversion.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Permittivity standing in for a perfect conductor.
pub const CONDUCTOR_PERMITTIVITY: f64 = 1e8;

/// `eps1` fills the corrugated half-space `z < h`, `eps2` hosts the particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DielectricPair {
    eps1: f64,
    eps2: f64,
}

impl DielectricPair {
    pub fn new(eps1: f64, eps2: f64) -> Result<Self> {
        for (name, v) in [("eps1", eps1), ("eps2", eps2)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(Self { eps1, eps2 })
    }

    /// A perfectly conducting corrugated body facing a host of permittivity `eps2`.
    pub fn conductor(eps2: f64) -> Result<Self> {
        Self::new(CONDUCTOR_PERMITTIVITY, eps2)
    }

    /// Pair with `eps1 = 1` and `eps2 = ratio`; every regime quantity depends
    /// only on this ratio.
    pub fn from_ratio(ratio: f64) -> Result<Self> {
        Self::new(1.0, ratio)
    }

    pub fn eps1(&self) -> f64 {
        self.eps1
    }

    pub fn eps2(&self) -> f64 {
        self.eps2
    }

    /// `eps2 / eps1`.
    pub fn ratio(&self) -> f64 {
        self.eps2 / self.eps1
    }

    /// Planar image strength `(eps1 - eps2) / (eps1 + eps2)`, in `(-1, 1)`.
    pub fn contrast(&self) -> f64 {
        (self.eps1 - self.eps2) / (self.eps1 + self.eps2)
    }

    /// `eps1^2 / (eps2 (eps1 + eps2)^2)`, the positive factor in front of the
    /// sinusoidal first-order energy.
    pub fn first_order_prefactor(&self) -> f64 {
        let s = self.eps1 + self.eps2;
        self.eps1 * self.eps1 / (self.eps2 * s * s)
    }
}

/// Particle position; `z0` is measured from the mean interface plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryPoint {
    pub x0: f64,
    pub y0: f64,
    z0: f64,
}

impl GeometryPoint {
    pub fn new(x0: f64, y0: f64, z0: f64) -> Result<Self> {
        if !(z0.is_finite() && z0 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "particle height z0 must be positive, got {z0}"
            )));
        }
        if !(x0.is_finite() && y0.is_finite()) {
            return Err(Error::InvalidArgument("lateral position must be finite".into()));
        }
        Ok(Self { x0, y0, z0 })
    }

    pub fn z0(&self) -> f64 {
        self.z0
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x0, self.y0, self.z0]
    }
}

/// Convert a reduced energy (`U * eps0`) with the dipole tensor in C^2 m^2
/// and lengths in metres to joules.
pub fn reduced_to_si(reduced: f64) -> f64 {
    reduced / VACUUM_PERMITTIVITY
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contrast_values() {
        assert_eq!(DielectricPair::new(2.0, 2.0).unwrap().contrast(), 0.0);
        assert!((DielectricPair::conductor(1.0).unwrap().contrast() - 1.0).abs() < 1e-7);
        assert!((DielectricPair::new(3.0, 1.0).unwrap().contrast() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn prefactor_values() {
        assert!((DielectricPair::new(1.0, 1.0).unwrap().first_order_prefactor() - 0.25).abs() < 1e-15);
        assert!((DielectricPair::conductor(1.0).unwrap().first_order_prefactor() - 1.0).abs() < 1e-7);
        assert!(
            (DielectricPair::new(2.0, 4.0).unwrap().first_order_prefactor() - 1.0 / 36.0).abs()
                < 1e-15
        );
    }

    #[test]
    fn rejects_bad_permittivities() {
        assert!(DielectricPair::new(0.0, 1.0).is_err());
        assert!(DielectricPair::new(1.0, -2.0).is_err());
        assert!(DielectricPair::new(f64::INFINITY, 1.0).is_err());
        assert!(GeometryPoint::new(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn contrast_antisymmetric_and_prefactor_scaling() {
        for &(e1, e2) in &[(1.0, 3.0), (7.5, 0.2), (2.0, 2.5)] {
            let p = DielectricPair::new(e1, e2).unwrap();
            let q = DielectricPair::new(e2, e1).unwrap();
            assert!((p.contrast() + q.contrast()).abs() < 1e-15);
            for &c in &[0.1, 3.0, 1e3] {
                let s = DielectricPair::new(c * e1, c * e2).unwrap();
                let lhs = s.first_order_prefactor() * c;
                assert!((lhs / p.first_order_prefactor() - 1.0).abs() < 1e-13);
            }
        }
    }
}

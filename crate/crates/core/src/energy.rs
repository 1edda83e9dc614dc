//! Interaction energies of a dipole (classical) or a polarizable particle
//! (van der Waals) above the corrugated interface.
//!
//! Both channels share every formula; they differ only in the tensor `D`
//! supplied: `d_i d_j` for a classical dipole, `<d_i d_j>` for a quantum
//! particle. Values are reduced energies `U * eps0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::corrugation::{Corrugation, FourierProfile, SinusoidalProfile, Validity};
use crate::dipole::DipoleTensor;
use crate::error::{Error, Result};
use crate::kernels::{self, Family};
use crate::media::{DielectricPair, GeometryPoint};

/// Classical dipole or quantum (van der Waals) particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Classical,
    Vdw,
}

/// Order in the corrugation amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Zeroth,
    First,
    /// Zeroth plus first order.
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyValue {
    pub value: f64,
    pub order: Order,
    pub channel: Channel,
    pub validity: Validity,
}

/// The lateral first-order energy written as `-A cos(k x0 - delta)` up to a
/// positive prefactor, with `C = A cos(delta)` and `B = A sin(delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseDecomposition {
    pub b: f64,
    pub c: f64,
    pub amplitude: f64,
    pub delta: f64,
}

impl PhaseDecomposition {
    pub fn from_bc(b: f64, c: f64) -> Self {
        let amplitude = b.hypot(c);
        let mut delta = b.atan2(c);
        if delta <= -PI {
            delta = PI;
        }
        Self { b, c, amplitude, delta }
    }

    /// `(B, C) -> (sB, sC)`.
    pub fn scaled(&self, s: f64) -> Self {
        Self::from_bc(s * self.b, s * self.c)
    }
}

/// Planar energy `-(contrast/eps2) (Dxx + Dyy + 2 Dzz) / (64 π z0³)`.
pub fn u0(channel: Channel, d: &DipoleTensor, pair: &DielectricPair, z0: f64) -> Result<EnergyValue> {
    check_height(z0)?;
    let value = -pair.contrast() / pair.eps2() * d.planar_weight() / (64.0 * PI * z0.powi(3));
    Ok(EnergyValue { value, order: Order::Zeroth, channel, validity: Validity::Ok })
}

fn check_height(z0: f64) -> Result<()> {
    if !(z0.is_finite() && z0 > 0.0) {
        return Err(Error::InvalidArgument(format!("z0 must be positive, got {z0}")));
    }
    Ok(())
}

/// `B` and `C` for a sinusoid of wavenumber `u / z0`.
pub fn bc_decomposition(d: &DipoleTensor, pair: &DielectricPair, u: f64) -> Result<PhaseDecomposition> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::Domain(format!("k z0 must be positive, got {u}")));
    }
    let r = pair.ratio();
    let cond = kernels::radial(Family::Cond, u)?;
    let diel = kernels::radial(Family::Diel, u)?;
    let b = -2.0 * d.get(0, 2) * (1.0 - r) * (cond.xz + r * diel.xz);
    let c = (1.0 - r)
        * (0..3)
            .map(|i| d.get(i, i) * (cond.diagonal()[i] + r * diel.diagonal()[i]))
            .sum::<f64>();
    Ok(PhaseDecomposition::from_bc(b, c))
}

/// First-order energy of `h(x) = a cos(k x)`:
/// `-prefactor * 3 a / (512 π z0⁴) * [C cos(k x0) + B sin(k x0)]`.
pub fn u1_sinusoidal(
    channel: Channel,
    d: &DipoleTensor,
    pair: &DielectricPair,
    profile: &SinusoidalProfile,
    point: &GeometryPoint,
) -> Result<EnergyValue> {
    let z0 = point.z0();
    let validity = Validity::from_ratio(profile.amplitude() / z0);
    let dec = bc_decomposition(d, pair, profile.k() * z0)?;
    let kx = profile.k() * point.x0;
    let value = -pair.first_order_prefactor() * 3.0 * profile.amplitude() / (512.0 * PI * z0.powi(4))
        * (dec.c * kx.cos() + dec.b * kx.sin());
    Ok(EnergyValue { value, order: Order::First, channel, validity })
}

const IMAG_REL_TOL: f64 = 1e-10;

/// First-order energy of an arbitrary finite-spectrum profile from the
/// vector-momentum kernels.
pub fn u1_general(
    channel: Channel,
    d: &DipoleTensor,
    pair: &DielectricPair,
    profile: &FourierProfile,
    point: &GeometryPoint,
) -> Result<EnergyValue> {
    let z0 = point.z0();
    let validity = Validity::from_ratio(profile.max_height() / z0);
    let r = pair.ratio();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for line in Corrugation::spectrum(profile) {
        let (qx, qy) = (line.q[0] * z0, line.q[1] * z0);
        let cond = kernels::kernel(Family::Cond, qx, qy)?.contract(d);
        let diel = kernels::kernel(Family::Diel, qx, qy)?.contract(d);
        let phase = Complex64::from_polar(1.0, line.q[0] * point.x0 + line.q[1] * point.y0);
        let term = line.weight * phase * (cond + diel * r);
        magnitude += term.norm();
        sum += term;
    }
    let scale = -pair.first_order_prefactor() * (1.0 - r) / (64.0 * PI * z0.powi(4));
    if sum.im.abs() > IMAG_REL_TOL * magnitude.max(f64::MIN_POSITIVE) {
        return Err(Error::Numerical(format!(
            "first-order energy has imaginary residue {:.3e} against {:.3e}",
            sum.im, sum.re
        )));
    }
    Ok(EnergyValue { value: scale * sum.re, order: Order::First, channel, validity })
}

/// `u0 + u1` for a sinusoidal profile.
pub fn total_sinusoidal(
    channel: Channel,
    d: &DipoleTensor,
    pair: &DielectricPair,
    profile: &SinusoidalProfile,
    point: &GeometryPoint,
) -> Result<EnergyValue> {
    let zeroth = u0(channel, d, pair, point.z0())?;
    let first = u1_sinusoidal(channel, d, pair, profile, point)?;
    Ok(EnergyValue {
        value: zeroth.value + first.value,
        order: Order::Total,
        channel,
        validity: first.validity,
    })
}

/// Location of the first-order energy minimum in `[0, lambda)`.
pub fn x_min(decomp: &PhaseDecomposition, profile: &SinusoidalProfile) -> Result<f64> {
    if decomp.amplitude == 0.0 {
        return Err(Error::NoLateralForce);
    }
    let x = decomp.delta.rem_euclid(2.0 * PI) / profile.k();
    Ok(if x >= profile.lambda() { 0.0 } else { x })
}

/// Long-wavelength limit `-h(x0) dU0/dz0 = 3 h(x0) U0 / z0`.
pub fn pfa_first_order(
    channel: Channel,
    d: &DipoleTensor,
    pair: &DielectricPair,
    profile: &SinusoidalProfile,
    point: &GeometryPoint,
) -> Result<EnergyValue> {
    let z0 = point.z0();
    let zeroth = u0(channel, d, pair, z0)?;
    let h = profile.amplitude() * (profile.k() * point.x0).cos();
    Ok(EnergyValue {
        value: 3.0 * h * zeroth.value / z0,
        order: Order::First,
        channel,
        validity: Validity::from_ratio(profile.amplitude() / z0),
    })
}

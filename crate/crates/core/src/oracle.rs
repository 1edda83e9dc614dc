//! Brute-force cross-checks of the closed forms.
//!
//! Nothing here calls the Bessel kernels or the closed-form energies; only
//! the result container types are shared. Kernels are rebuilt by plane
//! quadrature of the exponential momentum representation, and energies by
//! finite-difference differentiation of the numerically transformed Green
//! function.
//!
//! Momentum representation used by [`kernel_by_quadrature`] (lengths in
//! units of `z0`, `q' = q - Q`):
//!
//! `I_ij(Q) = (8/π) ∫ d²q e^{-|q| - |q'|} w(q, q') M_ij(q, q')`
//!
//! with `w = 1` (conductor family) or `w = q̂·q̂'` (dielectric family) and
//! `M` the symmetrized product of the field-point gradient `(i q, -|q|)` and
//! the source-point gradient `(-i q', -|q'|)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corrugation::{SinusoidalProfile, Validity};
use crate::dipole::DipoleTensor;
use crate::energy::{Channel, EnergyValue, Order};
use crate::error::{Error, Result};
use crate::greens;
use crate::kernels::{Family, KernelMatrix};
use crate::media::{DielectricPair, GeometryPoint};
use crate::quad;

const KERNEL_REL_TOL: f64 = 1e-10;

/// Kernel matrix at `(qx z0, qy z0)` by direct quadrature.
pub fn kernel_by_quadrature(family: Family, qx_z0: f64, qy_z0: f64) -> Result<KernelMatrix> {
    let qq = [qx_z0, qy_z0];
    if !(qx_z0.hypot(qy_z0) > 0.0) {
        return Err(Error::Domain(format!("kernel quadrature needs Q != 0, got {qq:?}")));
    }
    let integrand = |q: [f64; 2]| -> [Complex64; 6] {
        let qp = [q[0] - qq[0], q[1] - qq[1]];
        let (n, np) = (q[0].hypot(q[1]), qp[0].hypot(qp[1]));
        let damp = (-n - np).exp();
        let w = match family {
            Family::Cond => 1.0,
            Family::Diel => {
                if n > 0.0 && np > 0.0 {
                    (q[0] * qp[0] + q[1] * qp[1]) / (n * np)
                } else {
                    0.0
                }
            }
        };
        let f = damp * w;
        let re = |v: f64| Complex64::new(v * f, 0.0);
        let im = |v: f64| Complex64::new(0.0, v * f);
        [
            re(q[0] * qp[0]),
            re(q[1] * qp[1]),
            re(n * np),
            re(0.5 * (q[0] * qp[1] + q[1] * qp[0])),
            im(0.5 * (n * qp[0] - np * q[0])),
            im(0.5 * (n * qp[1] - np * q[1])),
        ]
    };
    let v = quad::integrate_checked([0.0, 0.0], qq, 2.0, KERNEL_REL_TOL, 0.0, integrand)?;
    let s = 8.0 / PI;
    let [xx, yy, zz, xy, xz, yz] = v.map(|c| c * s);
    Ok(KernelMatrix { entries: [[xx, xy, xz], [xy, yy, yz], [xz, yz, zz]] })
}

/// Default finite-difference step in units of `z0`.
pub const FD_STEP: f64 = 1e-4;
/// Allowed disagreement between step `h` and `h/2`, relative to the largest
/// second derivative.
pub const RICHARDSON_TOL: f64 = 1e-5;

/// Energy contributions recovered by differentiating the Green function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteDifferenceEnergy {
    /// From the planar image term.
    pub zeroth: f64,
    /// From the first-order correction.
    pub first: f64,
    /// Largest step-halving disagreement seen, relative to the largest derivative.
    pub richardson_gap: f64,
}

impl FiniteDifferenceEnergy {
    pub fn total(&self) -> f64 {
        self.zeroth + self.first
    }
}

/// Mixed second derivatives `∂_i ∂'_j G(r, r')` at `r = r' = r0` by central
/// differences, extrapolated from steps `h` and `h/2`. Returns the
/// symmetrized matrix and the relative step-halving gap.
fn mixed_hessian<G>(g: G, r0: [f64; 3], h: f64) -> Result<([[f64; 3]; 3], f64)>
where
    G: Fn([f64; 3], [f64; 3]) -> Result<f64> + Sync,
{
    let shift = |i: usize, s: f64| {
        let mut p = r0;
        p[i] += s;
        p
    };
    let stencil = |i: usize, j: usize, step: f64| -> Result<f64> {
        let pp = g(shift(i, step), shift(j, step))?;
        let pm = g(shift(i, step), shift(j, -step))?;
        let mp = g(shift(i, -step), shift(j, step))?;
        let mm = g(shift(i, -step), shift(j, -step))?;
        Ok((pp - pm - mp + mm) / (4.0 * step * step))
    };
    let raw = (0..18)
        .into_par_iter()
        .map(|k| {
            let (ij, half) = (k % 9, k / 9);
            stencil(ij / 3, ij % 3, if half == 0 { h } else { 0.5 * h })
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut out = [[0.0; 3]; 3];
    let mut gap: f64 = 0.0;
    let scale = raw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for i in 0..3 {
        for j in 0..3 {
            let (coarse, fine) = (raw[3 * i + j], raw[9 + 3 * i + j]);
            gap = gap.max((coarse - fine).abs());
            out[i][j] = (4.0 * fine - coarse) / 3.0;
        }
    }
    let gap = if scale > 0.0 { gap / scale } else { 0.0 };
    let mut sym = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            sym[i][j] = 0.5 * (out[i][j] + out[j][i]);
        }
    }
    Ok((sym, gap))
}

fn contract(d: &DipoleTensor, m: &[[f64; 3]; 3]) -> f64 {
    let mut acc = 0.0;
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            acc += d.get(i, j) * v;
        }
    }
    acc / (8.0 * PI)
}

fn point(p: [f64; 3]) -> Result<GeometryPoint> {
    GeometryPoint::new(p[0], p[1], p[2])
}

/// Zeroth- and first-order energies from `(1/8π) Σ D_ij ∂_i ∂'_j G_H` with
/// central differences of step `FD_STEP * z0`, taken separately on the two
/// parts of `G_H`.
pub fn finite_difference_parts(
    d: &DipoleTensor,
    pair: &DielectricPair,
    profile: &SinusoidalProfile,
    at: &GeometryPoint,
) -> Result<FiniteDifferenceEnergy> {
    let r0 = at.as_array();
    let h = FD_STEP * at.z0();
    let (image, gap0) = mixed_hessian(
        |r, rp| Ok(greens::image_term(r, &point(rp)?, pair)),
        r0,
        h,
    )?;
    let fourier = profile.to_fourier();
    let (first, gap1) = mixed_hessian(
        |r, rp| greens::g1_real(&point(r)?, &point(rp)?, pair, &fourier),
        r0,
        h,
    )?;
    let gap = gap0.max(gap1);
    if gap > RICHARDSON_TOL {
        return Err(Error::Numerical(format!(
            "finite differences unstable: halving the step changed second derivatives by \
             {gap:.3e} (relative), above {RICHARDSON_TOL:.1e}"
        )));
    }
    Ok(FiniteDifferenceEnergy {
        zeroth: contract(d, &image),
        first: contract(d, &first),
        richardson_gap: gap,
    })
}

/// Full `U0 + U1` by finite differences of the numerically built `G_H`.
pub fn energy_by_finite_difference(
    channel: Channel,
    d: &DipoleTensor,
    pair: &DielectricPair,
    profile: &SinusoidalProfile,
    at: &GeometryPoint,
) -> Result<EnergyValue> {
    let parts = finite_difference_parts(d, pair, profile, at)?;
    Ok(EnergyValue {
        value: parts.total(),
        order: Order::Total,
        channel,
        validity: Validity::from_ratio(profile.amplitude() / at.z0()),
    })
}

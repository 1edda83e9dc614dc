//! Closed-form first-order kernels.
//!
//! `I_ij(q z0)` weights a Fourier component `h~(q)` of the corrugation in the
//! first-order energy. The conductor family is independent of the
//! permittivities; the dielectric family is the extra piece a finite `eps1`
//! brings in. For a sinusoid along x only `q = (±k, 0)` enters, and the
//! kernels collapse onto the radial functions `R_ij(u)`, `u = k z0`, through
//! `I_ij(u, 0) = (3/8) R_ij(u)` (with an extra `i` on the xz entry).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dipole::DipoleTensor;
use crate::error::{Error, Result};
use crate::roots;
use crate::specialfn::bessel_k2_k3;

/// Which kernel family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cond,
    Diel,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Cond, Family::Diel];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cond => "cond",
            Family::Diel => "diel",
        }
    }
}

/// Independent entries of a radial kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Xx,
    Yy,
    Zz,
    Xz,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::Xx, Component::Yy, Component::Zz, Component::Xz];

    pub fn name(self) -> &'static str {
        match self {
            Component::Xx => "xx",
            Component::Yy => "yy",
            Component::Zz => "zz",
            Component::Xz => "xz",
        }
    }
}

/// Symmetric complex 3x3 kernel at one transfer momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelMatrix {
    pub entries: [[Complex64; 3]; 3],
}

impl KernelMatrix {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    /// `Σ_ij D_ij I_ij`.
    pub fn contract(&self, d: &DipoleTensor) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                acc += self.entries[i][j] * d.get(i, j);
            }
        }
        acc
    }

    /// Largest entrywise modulus, for relative comparisons.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn from_upper(xx: f64, yy: f64, zz: f64, xy: f64, xz_im: f64, yz_im: f64) -> Self {
        let r = |v: f64| Complex64::new(v, 0.0);
        let i = |v: f64| Complex64::new(0.0, v);
        KernelMatrix {
            entries: [
                [r(xx), r(xy), i(xz_im)],
                [r(xy), r(yy), i(yz_im)],
                [i(xz_im), i(yz_im), r(zz)],
            ],
        }
    }
}

/// `I_ij(q z0)` for `(qx z0, qy z0) != 0`.
pub fn kernel(family: Family, qx_z0: f64, qy_z0: f64) -> Result<KernelMatrix> {
    let q = qx_z0.hypot(qy_z0);
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Domain(format!(
            "kernel needs a nonzero finite transfer momentum, got ({qx_z0}, {qy_z0})"
        )));
    }
    let (k2, k3) = bessel_k2_k3(q)?;
    let (qx, qy) = (qx_z0, qy_z0);
    let q2 = q * q;
    let q3 = q2 * q;
    let q4 = q2 * q2;
    Ok(match family {
        Family::Cond => {
            let xz_factor = q2 * (k2 - 0.375 * q * k3);
            KernelMatrix::from_upper(
                0.375 * q2 * (q * k3 - qx * qx * k2),
                0.375 * q2 * (q * k3 - qy * qy * k2),
                (2.0 * q2 + 0.375 * q4) * k2 + 0.25 * q3 * k3,
                -0.375 * qx * qy * q2 * k2,
                qx * xz_factor,
                qy * xz_factor,
            )
        }
        Family::Diel => {
            let xz_factor = q2 * (0.375 * q * k3 - 2.0 * k2);
            let axial = |qa: f64| {
                (4.0 * qa * qa + 3.0 * q2 + 0.375 * qa * qa * q2) * k2
                    - (qa * qa * q + 0.375 * q3) * k3
            };
            KernelMatrix::from_upper(
                axial(qx),
                axial(qy),
                0.75 * q3 * k3 - 0.375 * q4 * k2,
                qx * qy * ((4.0 + 0.375 * q2) * k2 - q * k3),
                qx * xz_factor,
                qy * xz_factor,
            )
        }
    })
}

/// Radial kernel values at one `u = k z0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialKernel {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    pub xz: f64,
}

impl RadialKernel {
    pub fn component(&self, c: Component) -> f64 {
        match c {
            Component::Xx => self.xx,
            Component::Yy => self.yy,
            Component::Zz => self.zz,
            Component::Xz => self.xz,
        }
    }

    /// `[xx, yy, zz]`, in the order of the diagonal of `D`.
    pub fn diagonal(&self) -> [f64; 3] {
        [self.xx, self.yy, self.zz]
    }
}

/// `R_ij(u)` for `u > 0`.
pub fn radial(family: Family, u: f64) -> Result<RadialKernel> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::Domain(format!("radial kernel needs u > 0, got {u}")));
    }
    let (k2, k3) = bessel_k2_k3(u)?;
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u2 * u2;
    Ok(match family {
        Family::Cond => RadialKernel {
            xx: u3 * k3 - u4 * k2,
            yy: u3 * k3,
            zz: (16.0 / 3.0 * u2 + u4) * k2 + 2.0 / 3.0 * u3 * k3,
            xz: 8.0 / 3.0 * u3 * k2 - u4 * k3,
        },
        Family::Diel => RadialKernel {
            xx: (56.0 / 3.0 * u2 + u4) * k2 - 11.0 / 3.0 * u3 * k3,
            yy: 8.0 * u2 * k2 - u3 * k3,
            zz: 2.0 * u3 * k3 - u4 * k2,
            xz: u4 * k3 - 16.0 / 3.0 * u3 * k2,
        },
    })
}

/// A sign change of a radial kernel, in both `u = 2π z0/λ` and `λ/z0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignRoot {
    pub u: f64,
    pub lambda_over_z0: f64,
}

impl SignRoot {
    pub fn from_u(u: f64) -> Self {
        Self { u, lambda_over_z0: 2.0 * std::f64::consts::PI / u }
    }
}

pub const ROOT_SEARCH_MIN_U: f64 = 0.05;
pub const ROOT_SEARCH_MAX_U: f64 = 50.0;
const ROOT_SEARCH_SAMPLES: usize = 512;
const ROOT_XTOL: f64 = 1e-10;

/// The sign change of `R_component` on `u ∈ (0.05, 50)`, or `None` if the
/// kernel keeps its sign there. Brackets come from 512 log-spaced samples.
pub fn radial_sign_root(family: Family, component: Component) -> Option<SignRoot> {
    let f = |u: f64| radial(family, u).map(|r| r.component(component)).unwrap_or(f64::NAN);
    let grid = roots::log_grid(ROOT_SEARCH_MIN_U, ROOT_SEARCH_MAX_U, ROOT_SEARCH_SAMPLES);
    let found = roots::all_roots(f, &grid, ROOT_XTOL).ok()?;
    found.first().copied().map(SignRoot::from_u)
}

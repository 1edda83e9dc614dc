//! Named parameter sets for the standard figures.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::kernels::Family;
use crate::regimes::{AtlasRequest, AxisKind, AxisSpec, FixedParams, ParticleModel, UNIAXIAL_TRANSVERSE_RATIO};

/// Stand-in for `eps2/eps1 -> 0`.
pub const VANISHING_RATIO: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelCurveRequest {
    pub family: Family,
    pub u_min: f64,
    pub u_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntermediateRequest {
    pub particle: ParticleModel,
    pub phi: f64,
    pub lambda_over_z0: f64,
    pub ratios: Vec<f64>,
    pub n_theta: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Preset {
    KernelCurves(KernelCurveRequest),
    Atlas(AtlasRequest),
    Intermediate(IntermediateRequest),
}

pub const NAMES: &[&str] = &[
    "fig2", "fig3", "fig5a", "fig5b", "fig5c", "fig5d", "fig5e", "fig5f", "fig5g", "fig5h", "fig5i",
    "fig6a", "fig6b", "fig6c", "fig8a", "fig8b", "fig9", "fig10a", "fig10b", "fig10c", "fig10d",
];

const FIG5_RATIOS: [f64; 9] = [VANISHING_RATIO, 0.5, 0.99, 1.01, 1.1, 1.2, 1.3, 5.0, 100.0];
const FIG10_RATIOS: [f64; 4] = [0.5, 1.01, 1.1, 100.0];

fn lambda_axis(n: usize) -> AxisSpec {
    AxisSpec { kind: AxisKind::LambdaOverZ0, min: 0.05, max: 6.0, n, periodic: false }
}

fn phi_axis(n: usize) -> AxisSpec {
    AxisSpec { kind: AxisKind::Phi, min: 0.0, max: 2.0 * PI, n, periodic: true }
}

fn ratio_axis(min: f64, max: f64, n: usize) -> AxisSpec {
    AxisSpec { kind: AxisKind::Ratio, min, max, n, periodic: false }
}

fn phi_map(ratio: f64, particle: ParticleModel) -> Preset {
    Preset::Atlas(AtlasRequest {
        x: lambda_axis(240),
        y: phi_axis(256),
        fixed: FixedParams { ratio, lambda_over_z0: 1.0, theta: PI / 2.0, phi: 0.0 },
        particle,
    })
}

fn ratio_map(theta: f64, phi: f64, min_ratio: f64, particle: ParticleModel) -> Preset {
    Preset::Atlas(AtlasRequest {
        x: lambda_axis(240),
        y: ratio_axis(min_ratio, 3.0, 240),
        fixed: FixedParams { ratio: 1.0, lambda_over_z0: 1.0, theta, phi },
        particle,
    })
}

/// Look up a preset by name.
pub fn preset(name: &str) -> Option<Preset> {
    let uniaxial = ParticleModel::Uniaxial { transverse_ratio: UNIAXIAL_TRANSVERSE_RATIO };
    let letter = |prefix: &str| {
        name.strip_prefix(prefix)
            .filter(|s| s.len() == 1)
            .and_then(|s| s.bytes().next())
            .map(|b| b.wrapping_sub(b'a') as usize)
    };
    Some(match name {
        "fig2" => Preset::KernelCurves(KernelCurveRequest { family: Family::Cond, u_min: 0.05, u_max: 10.0, n: 400 }),
        "fig3" => Preset::KernelCurves(KernelCurveRequest { family: Family::Diel, u_min: 0.05, u_max: 10.0, n: 400 }),
        "fig6a" => ratio_map(PI / 2.0, 0.0, 0.02, ParticleModel::ClassicalDipole),
        "fig6b" => ratio_map(PI / 2.0, PI / 2.0, 0.02, ParticleModel::ClassicalDipole),
        "fig6c" => ratio_map(0.0, 0.0, 0.02, ParticleModel::ClassicalDipole),
        "fig8a" => Preset::Intermediate(IntermediateRequest {
            particle: ParticleModel::ClassicalDipole,
            phi: 0.0,
            lambda_over_z0: 2.0,
            ratios: vec![0.5, 0.99],
            n_theta: 721,
        }),
        "fig8b" => Preset::Intermediate(IntermediateRequest {
            particle: ParticleModel::ClassicalDipole,
            phi: 0.0,
            lambda_over_z0: 1.0,
            ratios: vec![1.2, 1.3, 5.0],
            n_theta: 721,
        }),
        "fig9" => ratio_map(PI / 2.0, 0.0, 0.0125, ParticleModel::Isotropic),
        _ => {
            if let Some(i) = letter("fig5").filter(|&i| i < FIG5_RATIOS.len()) {
                phi_map(FIG5_RATIOS[i], ParticleModel::ClassicalDipole)
            } else {
                let i = letter("fig10").filter(|&i| i < FIG10_RATIOS.len())?;
                phi_map(FIG10_RATIOS[i], uniaxial)
            }
        }
    })
}

//! Where the particle settles: peak, valley or in between.
//!
//! Everything here works on the phase decomposition of the first-order
//! energy. With `B = 0` the minimum sits over a peak when `C > 0` and over a
//! valley when `C < 0`; a nonzero `B` moves it in between. Because `C` carries
//! an overall factor `1 - r`, peak/valley boundaries are zeros of the reduced
//! bracket `Σ_i D_ii [R_ii^cond + r R_ii^diel]`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dipole::{ClassicalDipole, DipoleTensor};
use crate::energy::{bc_decomposition, Channel, PhaseDecomposition};
use crate::error::{Error, Result};
use crate::kernels::{self, Component, Family};
use crate::media::DielectricPair;
use crate::roots;

/// `|B| <= B_ZERO_TOL * A` counts as `B = 0`.
pub const B_ZERO_TOL: f64 = 1e-12;

/// Largest number of cells along one atlas axis.
pub const MAX_AXIS_POINTS: usize = 4096;

/// Ratio offsets used for the `r -> 1` limits.
pub const LIMIT_OFFSET: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeKind {
    Peak,
    Valley,
    Intermediate,
    NoLateralForce,
}

impl RegimeKind {
    pub fn name(self) -> &'static str {
        match self {
            RegimeKind::Peak => "peak",
            RegimeKind::Valley => "valley",
            RegimeKind::Intermediate => "intermediate",
            RegimeKind::NoLateralForce => "no_lateral_force",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeLabel {
    pub kind: RegimeKind,
    /// Minimum position in units of the period, in `[0, 1)`; absent without a lateral force.
    pub x_min_over_lambda: Option<f64>,
}

/// Label a phase decomposition, treating `|B| <= tol * A` as zero.
pub fn classify(decomp: &PhaseDecomposition, tol: f64) -> RegimeLabel {
    if !(decomp.amplitude > 0.0) {
        return RegimeLabel { kind: RegimeKind::NoLateralForce, x_min_over_lambda: None };
    }
    if decomp.b.abs() <= tol * decomp.amplitude {
        return if decomp.c > 0.0 {
            RegimeLabel { kind: RegimeKind::Peak, x_min_over_lambda: Some(0.0) }
        } else {
            RegimeLabel { kind: RegimeKind::Valley, x_min_over_lambda: Some(0.5) }
        };
    }
    let mut x = decomp.delta.rem_euclid(2.0 * PI) / (2.0 * PI);
    if x >= 1.0 {
        x = 0.0;
    }
    RegimeLabel { kind: RegimeKind::Intermediate, x_min_over_lambda: Some(x) }
}

/// How the correlation tensor is generated from an orientation `(theta, phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParticleModel {
    /// Unit classical dipole along the orientation.
    ClassicalDipole,
    /// Quantum particle with `<d_n²>/<d_p²> = transverse_ratio` and unit `<d_p²>`.
    Uniaxial { transverse_ratio: f64 },
    /// Quantum particle with `<d_i d_j> = δ_ij`; orientation is ignored.
    Isotropic,
}

impl ParticleModel {
    pub fn channel(&self) -> Channel {
        match self {
            ParticleModel::ClassicalDipole => Channel::Classical,
            _ => Channel::Vdw,
        }
    }

    pub fn tensor(&self, theta: f64, phi: f64) -> Result<DipoleTensor> {
        match *self {
            ParticleModel::ClassicalDipole => Ok(ClassicalDipole::new(1.0, theta, phi)?.tensor()),
            ParticleModel::Uniaxial { transverse_ratio } => {
                DipoleTensor::uniaxial(1.0, transverse_ratio, theta, phi)
            }
            ParticleModel::Isotropic => DipoleTensor::isotropic(1.0),
        }
    }
}

/// Quantity swept along an atlas axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisKind {
    LambdaOverZ0,
    Ratio,
    Phi,
}

impl AxisKind {
    pub fn name(self) -> &'static str {
        match self {
            AxisKind::LambdaOverZ0 => "lambda_over_z0",
            AxisKind::Ratio => "ratio",
            AxisKind::Phi => "phi",
        }
    }
}

/// `n` evenly spaced values from `min` to `max`; with `periodic` the upper end
/// is excluded (for angles).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub kind: AxisKind,
    pub min: f64,
    pub max: f64,
    pub n: usize,
    #[serde(default)]
    pub periodic: bool,
}

impl AxisSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.periodic {
            let step = (self.max - self.min) / self.n as f64;
            (0..self.n).map(|i| self.min + step * i as f64).collect()
        } else {
            roots::linspace(self.min, self.max, self.n)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 || self.n > MAX_AXIS_POINTS {
            return Err(Error::InvalidArgument(format!(
                "{} axis needs between 2 and {MAX_AXIS_POINTS} points, got {}",
                self.kind.name(),
                self.n
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.max > self.min) {
            return Err(Error::InvalidArgument(format!(
                "{} axis range must be increasing, got [{}, {}]",
                self.kind.name(),
                self.min,
                self.max
            )));
        }
        let positive = matches!(self.kind, AxisKind::LambdaOverZ0 | AxisKind::Ratio);
        if positive && self.min <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "{} axis must stay positive, got min {}",
                self.kind.name(),
                self.min
            )));
        }
        Ok(())
    }
}

/// Parameters held fixed while two others are swept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedParams {
    pub ratio: f64,
    pub lambda_over_z0: f64,
    pub theta: f64,
    pub phi: f64,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self { ratio: 0.5, lambda_over_z0: 2.0, theta: PI / 2.0, phi: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtlasRequest {
    pub x: AxisSpec,
    pub y: AxisSpec,
    pub fixed: FixedParams,
    pub particle: ParticleModel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtlasCell {
    pub ratio: f64,
    pub lambda_over_z0: f64,
    pub phi: f64,
    pub theta: f64,
    pub decomposition: PhaseDecomposition,
    pub label: RegimeLabel,
    /// `C` changes sign between this cell and its successor along either axis.
    pub boundary: bool,
}

/// A labelled grid, stored row by row with `x` varying fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtlasGrid {
    pub request: AtlasRequest,
    pub x_values: Vec<f64>,
    pub y_values: Vec<f64>,
    pub cells: Vec<AtlasCell>,
}

impl AtlasGrid {
    pub fn cell(&self, ix: usize, iy: usize) -> &AtlasCell {
        &self.cells[iy * self.x_values.len() + ix]
    }

    pub fn count(&self, kind: RegimeKind) -> usize {
        self.cells.iter().filter(|c| c.label.kind == kind).count()
    }
}

fn cell_at(req: &AtlasRequest, x: f64, y: f64) -> Result<AtlasCell> {
    let mut p = req.fixed;
    for (axis, v) in [(req.x.kind, x), (req.y.kind, y)] {
        match axis {
            AxisKind::LambdaOverZ0 => p.lambda_over_z0 = v,
            AxisKind::Ratio => p.ratio = v,
            AxisKind::Phi => p.phi = v,
        }
    }
    let d = req.particle.tensor(p.theta, p.phi)?;
    let pair = DielectricPair::from_ratio(p.ratio)?;
    let decomposition = bc_decomposition(&d, &pair, 2.0 * PI / p.lambda_over_z0)?;
    Ok(AtlasCell {
        ratio: p.ratio,
        lambda_over_z0: p.lambda_over_z0,
        phi: p.phi,
        theta: p.theta,
        decomposition,
        label: classify(&decomposition, B_ZERO_TOL),
        boundary: false,
    })
}

/// Evaluate and label every cell of the grid. Cells are computed in
/// parallel and returned in grid order.
pub fn atlas(req: &AtlasRequest) -> Result<AtlasGrid> {
    req.x.validate()?;
    req.y.validate()?;
    if req.x.kind == req.y.kind {
        return Err(Error::InvalidArgument("atlas axes must sweep different quantities".into()));
    }
    let xs = req.x.values();
    let ys = req.y.values();
    let nx = xs.len();
    let mut cells = (0..xs.len() * ys.len())
        .into_par_iter()
        .map(|i| cell_at(req, xs[i % nx], ys[i / nx]))
        .collect::<Result<Vec<_>>>()?;
    let sign = |c: &AtlasCell| c.decomposition.c > 0.0;
    for iy in 0..ys.len() {
        for ix in 0..nx {
            let here = sign(&cells[iy * nx + ix]);
            let right = ix + 1 < nx && sign(&cells[iy * nx + ix + 1]) != here;
            let up = iy + 1 < ys.len() && sign(&cells[(iy + 1) * nx + ix]) != here;
            cells[iy * nx + ix].boundary = right || up;
        }
    }
    Ok(AtlasGrid { request: *req, x_values: xs, y_values: ys, cells })
}

/// `Σ_i D_ii [R_ii^cond(u) + r R_ii^diel(u)]`, the sign of `C / (1 - r)`.
pub fn reduced_bracket(d: &DipoleTensor, ratio: f64, u: f64) -> Result<f64> {
    let cond = kernels::radial(Family::Cond, u)?.diagonal();
    let diel = kernels::radial(Family::Diel, u)?.diagonal();
    Ok((0..3).map(|i| d.get(i, i) * (cond[i] + ratio * diel[i])).sum())
}

/// One point on a `C = 0` curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    /// Value of the scanned parameter.
    pub axis_value: f64,
    /// Where `C` vanishes along the other parameter.
    pub location: f64,
}

const BOUNDARY_SAMPLES: usize = 400;
const BOUNDARY_RTOL: f64 = 1e-10;

/// `C = 0` locations. With `axis = LambdaOverZ0`, each entry of `values` is a
/// period and roots are sought in ratio over `search`; with `axis = Ratio`,
/// each value is a ratio and roots are sought in `lambda/z0`. `r = 1`
/// itself, where the whole first-order energy vanishes, is never reported.
pub fn boundary_curve(
    axis: AxisKind,
    values: &[f64],
    search: (f64, f64),
    d: &DipoleTensor,
) -> Result<Vec<BoundaryPoint>> {
    if axis == AxisKind::Phi {
        return Err(Error::InvalidArgument("boundary curves scan ratio or lambda/z0".into()));
    }
    if !(search.0 > 0.0 && search.1 > search.0) {
        return Err(Error::InvalidArgument(format!("invalid search interval {search:?}")));
    }
    let grid = roots::log_grid(search.0, search.1, BOUNDARY_SAMPLES);
    let mut out = Vec::new();
    for &v in values {
        let f = |s: f64| -> f64 {
            let r = if axis == AxisKind::LambdaOverZ0 {
                reduced_bracket(d, s, 2.0 * PI / v)
            } else {
                reduced_bracket(d, v, 2.0 * PI / s)
            };
            r.unwrap_or(f64::NAN)
        };
        for root in roots::all_roots(f, &grid, BOUNDARY_RTOL)? {
            out.push(BoundaryPoint { axis_value: v, location: root });
        }
    }
    Ok(out)
}

/// Largest boundary ratio over `lambda/z0` in `range`, and where it occurs.
/// For an x-oriented dipole this is the ratio above which only valleys remain.
pub fn sup_boundary_ratio(d: &DipoleTensor, range: (f64, f64)) -> Result<Option<(f64, f64)>> {
    // The bracket is linear in r, so the boundary ratio at fixed u is -S_cond/S_diel.
    let ratio_at = |lam: f64| -> Result<Option<f64>> {
        let u = 2.0 * PI / lam;
        let s_cond = reduced_bracket(d, 0.0, u)?;
        let s_diel = reduced_bracket(d, 1.0, u)? - s_cond;
        let r = -s_cond / s_diel;
        Ok((s_diel != 0.0 && r > 0.0 && r.is_finite()).then_some(r))
    };
    let grid = roots::linspace(range.0, range.1, 2000);
    let mut best: Option<(f64, f64)> = None;
    let mut best_i = 0;
    for (i, &lam) in grid.iter().enumerate() {
        if let Some(r) = ratio_at(lam)? {
            if best.is_none_or(|(_, b)| r > b) {
                best = Some((lam, r));
                best_i = i;
            }
        }
    }
    let Some(_) = best else { return Ok(None) };
    let lo = grid[best_i.saturating_sub(1)];
    let hi = grid[(best_i + 1).min(grid.len() - 1)];
    let neg = |lam: f64| ratio_at(lam).ok().flatten().map_or(f64::INFINITY, |r| -r);
    let lam = golden_min(neg, lo, hi, 1e-12);
    Ok(Some((lam, -neg(lam))))
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol * (a.abs() + b.abs()).max(1e-300) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

const ROOT_LAMBDA_RANGE: (f64, f64) = (0.05, 20.0);

fn lambda_roots(f: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
    let grid = roots::log_grid(ROOT_LAMBDA_RANGE.0, ROOT_LAMBDA_RANGE.1, 1000);
    roots::all_roots(f, &grid, 1e-12)
}

/// Large-ratio asymptote of the boundary: the zero in `lambda/z0` of
/// `Σ_i D_ii R_ii^diel`.
pub fn boundary_asymptote(d: &DipoleTensor) -> Result<Option<f64>> {
    let f = |lam: f64| {
        let u = 2.0 * PI / lam;
        match (reduced_bracket(d, 1.0, u), reduced_bracket(d, 0.0, u)) {
            (Ok(a), Ok(b)) => a - b,
            _ => f64::NAN,
        }
    };
    Ok(lambda_roots(f)?.first().copied())
}

/// Which side of `r = 1` a limit is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    FromBelow,
    FromAbove,
}

/// Boundary location in `lambda/z0` as `r -> 1`, evaluated at `r = 1 ∓ 1e-6`.
/// `None` when the reduced bracket keeps its sign.
pub fn limit_g(d: &DipoleTensor, side: Side) -> Result<Option<f64>> {
    let r = match side {
        Side::FromBelow => 1.0 - LIMIT_OFFSET,
        Side::FromAbove => 1.0 + LIMIT_OFFSET,
    };
    let f = |lam: f64| reduced_bracket(d, r, 2.0 * PI / lam).unwrap_or(f64::NAN);
    Ok(lambda_roots(f)?.first().copied())
}

/// One point of an intermediate-regime curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub theta: f64,
    /// Continuous (unwrapped) minimum position in periods.
    pub x_min_over_lambda: f64,
}

/// Minimum position versus polar angle `theta ∈ [0, π]`, unwrapped so the
/// curve is continuous; the first point lies in `[0, 1)`. Orientations without
/// a lateral force are skipped.
pub fn intermediate_curve(
    particle: &ParticleModel,
    phi: f64,
    pair: &DielectricPair,
    lambda_over_z0: f64,
    n_theta: usize,
) -> Result<Vec<CurvePoint>> {
    if n_theta < 2 {
        return Err(Error::InvalidArgument("intermediate curve needs at least two angles".into()));
    }
    if !(lambda_over_z0 > 0.0) {
        return Err(Error::InvalidArgument(format!("lambda/z0 must be positive, got {lambda_over_z0}")));
    }
    let u = 2.0 * PI / lambda_over_z0;
    let mut out: Vec<CurvePoint> = Vec::with_capacity(n_theta);
    for theta in roots::linspace(0.0, PI, n_theta) {
        let d = particle.tensor(theta, phi)?;
        let label = classify(&bc_decomposition(&d, pair, u)?, B_ZERO_TOL);
        let Some(x) = label.x_min_over_lambda else { continue };
        let x = match out.last() {
            None => x,
            Some(prev) => x + (prev.x_min_over_lambda - x).round(),
        };
        out.push(CurvePoint { theta, x_min_over_lambda: x });
    }
    Ok(out)
}

/// One row of the thresholds table: either a kernel sign change or a named constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub family: String,
    pub component: String,
    pub u_root: Option<f64>,
    pub lambda_over_z0_root: Option<f64>,
    pub ratio: Option<f64>,
}

/// Named constants of the regime diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NamedThresholds {
    /// Ratio above which an x-oriented dipole only sees valleys, and the
    /// period where that supremum is reached.
    pub x_dipole_ratio_sup: f64,
    pub x_dipole_ratio_sup_lambda: f64,
    pub y_dipole_lambda_asymptote: Option<f64>,
    pub z_dipole_lambda_asymptote: Option<f64>,
    pub isotropic_lambda_asymptote: Option<f64>,
    pub g_x_dipole_below: Option<f64>,
    pub g_x_dipole_above: Option<f64>,
    pub g_y_dipole: Option<f64>,
    pub g_z_dipole: Option<f64>,
    pub g_uniaxial_06: Option<f64>,
}

/// Transverse-to-principal ratio of the uniaxial particle used in the quantum diagrams.
pub const UNIAXIAL_TRANSVERSE_RATIO: f64 = 0.6;

pub fn named_thresholds() -> Result<NamedThresholds> {
    let x = DipoleTensor::diagonal(1.0, 0.0, 0.0)?;
    let y = DipoleTensor::diagonal(0.0, 1.0, 0.0)?;
    let z = DipoleTensor::diagonal(0.0, 0.0, 1.0)?;
    let iso = DipoleTensor::isotropic(1.0)?;
    let uni = DipoleTensor::uniaxial(1.0, UNIAXIAL_TRANSVERSE_RATIO, PI / 2.0, 0.0)?;
    let (lam, ratio) = sup_boundary_ratio(&x, (0.05, 6.0))?
        .ok_or_else(|| Error::Numerical("x-dipole boundary never reaches positive ratios".into()))?;
    Ok(NamedThresholds {
        x_dipole_ratio_sup: ratio,
        x_dipole_ratio_sup_lambda: lam,
        y_dipole_lambda_asymptote: boundary_asymptote(&y)?,
        z_dipole_lambda_asymptote: boundary_asymptote(&z)?,
        isotropic_lambda_asymptote: boundary_asymptote(&iso)?,
        g_x_dipole_below: limit_g(&x, Side::FromBelow)?,
        g_x_dipole_above: limit_g(&x, Side::FromAbove)?,
        g_y_dipole: limit_g(&y, Side::FromBelow)?,
        g_z_dipole: limit_g(&z, Side::FromBelow)?,
        g_uniaxial_06: limit_g(&uni, Side::FromBelow)?,
    })
}

/// Kernel sign changes followed by the named constants.
pub fn thresholds_table() -> Result<Vec<ThresholdRow>> {
    let mut rows = Vec::new();
    for fam in Family::ALL {
        for comp in Component::ALL {
            let root = kernels::radial_sign_root(fam, comp);
            rows.push(ThresholdRow {
                family: fam.name().into(),
                component: comp.name().into(),
                u_root: root.map(|r| r.u),
                lambda_over_z0_root: root.map(|r| r.lambda_over_z0),
                ratio: None,
            });
        }
    }
    let t = named_thresholds()?;
    let constant = |name: &str, lam: Option<f64>, ratio: Option<f64>| ThresholdRow {
        family: "constant".into(),
        component: name.into(),
        u_root: lam.map(|l| 2.0 * PI / l),
        lambda_over_z0_root: lam,
        ratio,
    };
    rows.push(constant(
        "x_dipole_ratio_sup",
        Some(t.x_dipole_ratio_sup_lambda),
        Some(t.x_dipole_ratio_sup),
    ));
    rows.push(constant("y_dipole_lambda_asymptote", t.y_dipole_lambda_asymptote, None));
    rows.push(constant("z_dipole_lambda_asymptote", t.z_dipole_lambda_asymptote, None));
    rows.push(constant("isotropic_lambda_asymptote", t.isotropic_lambda_asymptote, None));
    rows.push(constant("g_x_dipole_from_below", t.g_x_dipole_below, Some(1.0 - LIMIT_OFFSET)));
    rows.push(constant("g_x_dipole_from_above", t.g_x_dipole_above, Some(1.0 + LIMIT_OFFSET)));
    rows.push(constant("g_y_dipole", t.g_y_dipole, Some(1.0 - LIMIT_OFFSET)));
    rows.push(constant("g_z_dipole", t.g_z_dipole, Some(1.0 - LIMIT_OFFSET)));
    rows.push(constant("g_vdw_uniaxial_0.6", t.g_uniaxial_06, Some(1.0 - LIMIT_OFFSET)));
    Ok(rows)
}

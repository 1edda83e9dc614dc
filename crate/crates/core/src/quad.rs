//! Plane quadrature for exponentially damped momentum integrals.
//!
//! The integrands met here look like `exp(-|q - a| s - |q - b| t)` times
//! rational factors of the two distances, so they have cone-like kinks at two
//! points `a` and `b`. The rule splits the plane along the perpendicular
//! bisector of `a` and `b`, covers each half with polar coordinates centred
//! on its own kink, and applies composite Gauss-Legendre panels in angle and
//! radius. Node positions depend smoothly on the geometry, so results can be
//! differentiated numerically.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Radial cutoff in units of the decay length: `exp(-40)` is about `4e-18`.
pub const CUTOFF_DECAY_LENGTHS: f64 = 40.0;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre order must be at least 1");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        dp = if d != 0.0 { d } else { dp };
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Panel counts and Gauss order of a [`PlaneRule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub radial_panels: usize,
    pub angular_panels: usize,
    pub order: usize,
}

impl Resolution {
    pub const COARSE: Resolution = Resolution { radial_panels: 12, angular_panels: 6, order: 16 };
    pub const FINE: Resolution = Resolution { radial_panels: 18, angular_panels: 9, order: 20 };
}

/// A fixed set of weighted nodes covering the plane.
#[derive(Debug, Clone)]
pub struct PlaneRule {
    points: Vec<[f64; 2]>,
    weights: Vec<f64>,
}

/// Shared quadrature data while a rule is being assembled.
struct Patch<'a> {
    gx: &'a [f64],
    gw: &'a [f64],
    res: Resolution,
    radius: f64,
}

impl Patch<'_> {
    /// Nodes along one ray from `center` in direction `dir`, out to `rho_end`,
    /// with radial spacing graded geometrically from the length `ell`.
    fn ray(&self, rule: &mut PlaneRule, center: [f64; 2], dir: f64, w_dir: f64, rho_end: f64, ell: f64) {
        let alpha = (rho_end / ell).ln_1p();
        let norm = rho_end / alpha.exp_m1();
        let (s, c) = dir.sin_cos();
        let ds = 1.0 / self.res.radial_panels as f64;
        for p in 0..self.res.radial_panels {
            let s0 = p as f64 * ds;
            for (x, w) in self.gx.iter().zip(self.gw) {
                let t = s0 + 0.5 * ds * (x + 1.0);
                let rho = norm * (alpha * t).exp_m1();
                let jac = norm * alpha * (alpha * t).exp();
                rule.points.push([center[0] + rho * c, center[1] + rho * s]);
                rule.weights.push(w_dir * 0.5 * ds * w * jac * rho);
            }
        }
    }

    /// Angular range `[lo, hi]` (relative to `axis`) with rays reaching the cutoff radius.
    #[allow(clippy::too_many_arguments)]
    fn fan(&self, rule: &mut PlaneRule, center: [f64; 2], axis: f64, lo: f64, hi: f64, panels: usize, ell: f64) {
        let width = (hi - lo) / panels as f64;
        for p in 0..panels {
            let a0 = lo + p as f64 * width;
            for (x, w) in self.gx.iter().zip(self.gw) {
                let psi = a0 + 0.5 * width * (x + 1.0);
                self.ray(rule, center, axis + psi, 0.5 * width * w, self.radius, ell);
            }
        }
    }

    /// The wedge whose rays end on the bisector at distance `half`. Rays are
    /// parametrized by where they hit the bisector, `y = ell sinh(beta v)`,
    /// which resolves both the nearby kink and the far tail.
    fn strip(&self, rule: &mut PlaneRule, center: [f64; 2], axis: f64, half: f64, ell: f64) {
        let y_max = (self.radius * self.radius - half * half).sqrt();
        let beta = (y_max / ell).asinh();
        let panels = 2 * self.res.angular_panels;
        let width = 2.0 / panels as f64;
        for p in 0..panels {
            let v0 = -1.0 + p as f64 * width;
            for (x, w) in self.gx.iter().zip(self.gw) {
                let v = v0 + 0.5 * width * (x + 1.0);
                let y = ell * (beta * v).sinh();
                let dy = ell * beta * (beta * v).cosh();
                let psi = y.atan2(half);
                let dpsi = dy * half / (half * half + y * y);
                let rho_end = half.hypot(y);
                self.ray(rule, center, axis + psi, 0.5 * width * w * dpsi, rho_end, ell);
            }
        }
    }
}

impl PlaneRule {
    /// Rule adapted to kinks at `a` and `b` for an integrand decaying like
    /// `exp(-decay |q|)` away from them. `a == b` gives a single polar patch.
    pub fn two_center(a: [f64; 2], b: [f64; 2], decay: f64, res: Resolution) -> Result<Self> {
        if !(decay > 0.0) || !decay.is_finite() {
            return Err(Error::Domain(format!("decay rate must be positive, got {decay}")));
        }
        let radius = CUTOFF_DECAY_LENGTHS / decay;
        let (gx, gw) = gauss_legendre(res.order);
        let mut rule = PlaneRule { points: Vec::new(), weights: Vec::new() };
        let sep = [b[0] - a[0], b[1] - a[1]];
        let dist = sep[0].hypot(sep[1]);
        let patch = Patch { gx: &gx, gw: &gw, res, radius };
        if dist <= 1e-14 * radius {
            let ell = 1.0 / decay;
            patch.fan(&mut rule, a, 0.0, -PI, PI, 2 * res.angular_panels, ell);
            return Ok(rule);
        }
        let half = 0.5 * dist;
        let ell = half.min(1.0 / decay);
        for (center, axis) in [(a, sep[1].atan2(sep[0])), (b, (-sep[1]).atan2(-sep[0]))] {
            if half < radius {
                let psi_c = (half / radius).acos();
                patch.fan(&mut rule, center, axis, psi_c, 2.0 * PI - psi_c, 2 * res.angular_panels, ell);
                patch.strip(&mut rule, center, axis, half, ell);
            } else {
                patch.fan(&mut rule, center, axis, -PI, PI, 2 * res.angular_panels, ell);
            }
        }
        Ok(rule)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn([f64; 2]) -> Complex64,
    {
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, w) in self.points.iter().zip(&self.weights) {
            acc += f(*p) * *w;
        }
        acc
    }

    /// Several integrands sharing the same nodes, evaluated in one pass.
    pub fn integrate_many<const N: usize, F>(&self, f: F) -> [Complex64; N]
    where
        F: Fn([f64; 2]) -> [Complex64; N],
    {
        let mut acc = [Complex64::new(0.0, 0.0); N];
        for (p, w) in self.points.iter().zip(&self.weights) {
            let v = f(*p);
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x * *w;
            }
        }
        acc
    }
}

/// Integrate at two resolutions and insist that they agree to `rel_tol`
/// relative to `scale` (or to the result itself when `scale` is zero).
pub fn integrate_checked<const N: usize, F>(
    a: [f64; 2],
    b: [f64; 2],
    decay: f64,
    rel_tol: f64,
    scale: f64,
    f: F,
) -> Result<[Complex64; N]>
where
    F: Fn([f64; 2]) -> [Complex64; N],
{
    let coarse = PlaneRule::two_center(a, b, decay, Resolution::COARSE)?.integrate_many(&f);
    let fine = PlaneRule::two_center(a, b, decay, Resolution::FINE)?.integrate_many(&f);
    let magnitude = fine.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let reference = if scale > 0.0 { scale } else { magnitude };
    let worst = coarse.iter().zip(&fine).map(|(c, f)| (c - f).norm()).fold(0.0, f64::max);
    if !worst.is_finite() || worst > rel_tol * reference {
        return Err(Error::Numerical(format!(
            "plane quadrature did not converge: refinement changed the result by {worst:.3e} \
             against a tolerance of {:.3e} (kinks at {a:?} and {b:?}, decay {decay})",
            rel_tol * reference
        )));
    }
    Ok(fine)
}

//! Bracketing and bisection for smooth scalar functions.

use crate::error::{Error, Result};

const MAX_BISECTIONS: usize = 200;

/// `n` logarithmically spaced points from `a` to `b` inclusive.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > a && n >= 2);
    let (la, lb) = (a.ln(), b.ln());
    (0..n).map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// `n` evenly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Consecutive grid intervals over which `f` changes sign. An exact zero at a
/// grid node brackets the interval to its left.
pub fn sign_change_brackets<F: Fn(f64) -> f64>(f: F, grid: &[f64]) -> Vec<(f64, f64)> {
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    grid.windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| (v[0] > 0.0 && v[1] <= 0.0) || (v[0] < 0.0 && v[1] >= 0.0))
        .map(|(x, _)| (x[0], x[1]))
        .collect()
}

/// Bisection on `[a, b]` until the bracket is narrower than `xtol * max(1, |x|)`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::Numerical(format!(
            "no sign change on [{a}, {b}] (f = {fa:e}, {fb:e})"
        )));
    }
    for _ in 0..MAX_BISECTIONS {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= xtol * m.abs().max(1.0) {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// All roots of `f` bracketed on `grid`, each refined by bisection.
pub fn all_roots<F: Fn(f64) -> f64>(f: F, grid: &[f64], xtol: f64) -> Result<Vec<f64>> {
    sign_change_brackets(&f, grid)
        .into_iter()
        .map(|(a, b)| bisect(&f, a, b, xtol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn reports_missing_sign_change() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn brackets_every_root() {
        let g = linspace(0.1, 10.0, 400);
        let r = all_roots(f64::sin, &g, 1e-12).unwrap();
        assert_eq!(r.len(), 3);
        assert!((r[2] - 3.0 * std::f64::consts::PI).abs() < 1e-10);
    }

    #[test]
    fn grids() {
        let g = log_grid(0.05, 50.0, 512);
        assert_eq!(g.len(), 512);
        assert!((g[0] - 0.05).abs() < 1e-15 && (g[511] - 50.0).abs() < 1e-12);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }
}

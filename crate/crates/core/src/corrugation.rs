//! Corrugation profiles `h(x, y)` and their discrete Fourier spectra.
//!
//! Transform convention: `h~(q) = ∫ d²r h(r) e^{-i q·r}`. A profile with a
//! finite spectrum `h(r) = Σ_j w_j e^{i q_j·r}` therefore has
//! `h~(q) = (2π)² Σ_j w_j δ(q - q_j)`, and every `∫ d²q/(2π)² h~(q) F(q)`
//! collapses to `Σ_j w_j F(q_j)`. [`SpectralLine::weight`] is that `w_j`;
//! no other module handles factors of `(2π)²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Amplitude-to-height ratio above which first-order results get a warning.
pub const MARGINAL_AMPLITUDE_RATIO: f64 = 0.02;
/// Amplitude-to-height ratio above which the perturbative expansion is not trusted.
pub const MAX_AMPLITUDE_RATIO: f64 = 0.1;

const SPECTRUM_MATCH_TOL: f64 = 1e-12;

/// `h(x) = a cos(2π x / lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SinusoidalProfile {
    a: f64,
    lambda: f64,
}

impl SinusoidalProfile {
    /// `a = 0` is accepted and describes a flat interface.
    pub fn new(a: f64, lambda: f64) -> Result<Self> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "corrugation amplitude must be non-negative, got {a}"
            )));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "corrugation period must be positive, got {lambda}"
            )));
        }
        Ok(Self { a, lambda })
    }

    pub fn amplitude(&self) -> f64 {
        self.a
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn k(&self) -> f64 {
        2.0 * PI / self.lambda
    }

    pub fn to_fourier(&self) -> FourierProfile {
        if self.a == 0.0 {
            return FourierProfile::flat();
        }
        FourierProfile {
            modes: vec![Mode { qx: self.k(), qy: 0.0, amplitude: Complex64::new(self.a, 0.0) }],
        }
    }
}

/// One real cosine component `Re[amplitude · e^{i q·r}]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub qx: f64,
    pub qy: f64,
    pub amplitude: Complex64,
}

/// A single term `weight · e^{i q·r}` of the complex spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub q: [f64; 2],
    pub weight: Complex64,
}

impl SpectralLine {
    pub fn q_norm(&self) -> f64 {
        self.q[0].hypot(self.q[1])
    }
}

/// Profile with a finite spectrum, `h(r) = Σ Re[c_m e^{i q_m·r}]`.
///
/// Each stored mode implies its conjugate partner at `-q_m`, so the height is
/// real by construction.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FourierProfile {
    modes: Vec<Mode>,
}

impl FourierProfile {
    pub fn new(modes: Vec<Mode>) -> Result<Self> {
        for m in &modes {
            if !(m.qx.is_finite() && m.qy.is_finite() && m.amplitude.norm().is_finite()) {
                return Err(Error::InvalidArgument("profile mode has non-finite entries".into()));
            }
            if m.qx == 0.0 && m.qy == 0.0 {
                return Err(Error::InvalidArgument(
                    "a zero-wavevector mode is a uniform shift; absorb it into z0".into(),
                ));
            }
        }
        Ok(Self { modes: modes.into_iter().filter(|m| m.amplitude.norm() > 0.0).collect() })
    }

    pub fn flat() -> Self {
        Self { modes: Vec::new() }
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn is_flat(&self) -> bool {
        self.modes.is_empty()
    }

    /// Sum of two profiles.
    pub fn superpose(&self, other: &FourierProfile) -> FourierProfile {
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        FourierProfile { modes }
    }

    /// Spectrum lines with explicit conjugate pairs: `c/2` at `q` and `conj(c)/2` at `-q`.
    pub fn spectrum(&self) -> Vec<SpectralLine> {
        self.modes
            .iter()
            .flat_map(|m| {
                let half = m.amplitude * 0.5;
                [
                    SpectralLine { q: [m.qx, m.qy], weight: half },
                    SpectralLine { q: [-m.qx, -m.qy], weight: half.conj() },
                ]
            })
            .collect()
    }

    /// Upper bound on `|h|`.
    pub fn max_height(&self) -> f64 {
        self.modes.iter().map(|m| m.amplitude.norm()).sum()
    }
}

/// Common surface of both profile kinds.
pub trait Corrugation {
    fn spectrum(&self) -> Vec<SpectralLine>;

    fn height(&self, x: f64, y: f64) -> f64 {
        self.spectrum()
            .iter()
            .map(|l| l.weight * Complex64::from_polar(1.0, l.q[0] * x + l.q[1] * y))
            .sum::<Complex64>()
            .re
    }

    /// Discrete weight `w` with `h~(q) = (2π)² w δ(q - q_line)`; zero off the spectrum.
    fn fourier_amplitude(&self, qx: f64, qy: f64) -> Complex64 {
        let scale = qx.hypot(qy).max(1.0);
        self.spectrum()
            .iter()
            .filter(|l| (l.q[0] - qx).abs() <= SPECTRUM_MATCH_TOL * scale && (l.q[1] - qy).abs() <= SPECTRUM_MATCH_TOL * scale)
            .map(|l| l.weight)
            .sum()
    }
}

impl Corrugation for FourierProfile {
    fn spectrum(&self) -> Vec<SpectralLine> {
        FourierProfile::spectrum(self)
    }
}

impl Corrugation for SinusoidalProfile {
    fn spectrum(&self) -> Vec<SpectralLine> {
        self.to_fourier().spectrum()
    }

    fn height(&self, x: f64, _y: f64) -> f64 {
        self.a * (self.k() * x).cos()
    }
}

/// Either profile kind, as read from a profile file.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Sinusoidal(SinusoidalProfile),
    Modes(FourierProfile),
}

impl Profile {
    pub fn to_fourier(&self) -> FourierProfile {
        match self {
            Profile::Sinusoidal(s) => s.to_fourier(),
            Profile::Modes(f) => f.clone(),
        }
    }

    pub fn max_height(&self) -> f64 {
        match self {
            Profile::Sinusoidal(s) => s.amplitude(),
            Profile::Modes(f) => f.max_height(),
        }
    }

    /// `{"type": "sinusoidal", "a": .., "lambda": ..}` or
    /// `{"type": "modes", "modes": [{"qx", "qy", "re", "im"}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProfileFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("profile file: {e}")))?;
        match file {
            ProfileFile::Sinusoidal { a, lambda } => {
                Ok(Profile::Sinusoidal(SinusoidalProfile::new(a, lambda)?))
            }
            ProfileFile::Modes { modes } => Ok(Profile::Modes(FourierProfile::new(
                modes
                    .into_iter()
                    .map(|m| Mode { qx: m.qx, qy: m.qy, amplitude: Complex64::new(m.re, m.im) })
                    .collect(),
            )?)),
        }
    }
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum ProfileFile {
    Sinusoidal { a: f64, lambda: f64 },
    Modes { modes: Vec<ModeRecord> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeRecord {
    qx: f64,
    qy: f64,
    re: f64,
    #[serde(default)]
    im: f64,
}

/// How far `a / z0` sits inside the perturbative regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    Ok,
    /// Above [`MARGINAL_AMPLITUDE_RATIO`].
    Marginal,
    /// Above [`MAX_AMPLITUDE_RATIO`].
    Violated,
}

impl Validity {
    pub fn from_ratio(amplitude_over_z0: f64) -> Self {
        if amplitude_over_z0 > MAX_AMPLITUDE_RATIO {
            Validity::Violated
        } else if amplitude_over_z0 > MARGINAL_AMPLITUDE_RATIO {
            Validity::Marginal
        } else {
            Validity::Ok
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinusoid_peak_and_valley() {
        let p = SinusoidalProfile::new(0.05, 1.0).unwrap();
        assert!((p.height(0.0, 0.0) - 0.05).abs() < 1e-15);
        assert!((p.height(0.5, 3.0) + 0.05).abs() < 1e-15);
    }

    #[test]
    fn conjugate_pair_matches_sinusoid() {
        let p = SinusoidalProfile::new(0.07, 1.3).unwrap();
        let f = p.to_fourier();
        for i in 0..50 {
            let x = -2.0 + 0.11 * i as f64;
            let y = 0.37 * i as f64;
            assert!((Corrugation::height(&f, x, y) - p.height(x, y)).abs() < 1e-15);
        }
    }

    #[test]
    fn sinusoid_spectrum_weights() {
        let p = SinusoidalProfile::new(0.1, 2.0).unwrap();
        let s = Corrugation::spectrum(&p);
        assert_eq!(s.len(), 2);
        assert!((p.fourier_amplitude(PI, 0.0) - Complex64::new(0.05, 0.0)).norm() < 1e-15);
        assert!((p.fourier_amplitude(-PI, 0.0) - Complex64::new(0.05, 0.0)).norm() < 1e-15);
        assert_eq!(p.fourier_amplitude(1.0, 0.0), Complex64::new(0.0, 0.0));

        let flat = SinusoidalProfile::new(0.0, 2.0).unwrap();
        assert!(Corrugation::spectrum(&flat).is_empty());
    }

    #[test]
    fn superposition_and_linearity() {
        let a = SinusoidalProfile::new(0.02, 1.0).unwrap().to_fourier();
        let b = FourierProfile::new(vec![Mode { qx: 1.0, qy: 2.0, amplitude: Complex64::new(0.01, -0.02) }])
            .unwrap();
        let s = a.superpose(&b);
        assert_eq!(s.spectrum().len(), 4);
        for &(qx, qy) in &[(2.0 * PI, 0.0), (-1.0, -2.0), (1.0, 2.0), (0.3, 0.3)] {
            let lhs = s.fourier_amplitude(qx, qy);
            let rhs = a.fourier_amplitude(qx, qy) + b.fourier_amplitude(qx, qy);
            assert!((lhs - rhs).norm() < 1e-15);
        }
    }

    #[test]
    fn height_is_real_and_bounded() {
        let f = FourierProfile::new(vec![
            Mode { qx: 1.0, qy: 0.5, amplitude: Complex64::new(0.01, 0.03) },
            Mode { qx: -2.0, qy: 1.5, amplitude: Complex64::new(-0.02, 0.0) },
        ])
        .unwrap();
        for i in 0..40 {
            let (x, y) = (0.3 * i as f64, -0.17 * i as f64);
            let z: Complex64 = f
                .spectrum()
                .iter()
                .map(|l| l.weight * Complex64::from_polar(1.0, l.q[0] * x + l.q[1] * y))
                .sum();
            assert!(z.im.abs() <= 1e-12 * f.max_height());
            assert!(z.re.abs() <= f.max_height() + 1e-15);
        }
    }

    #[test]
    fn parses_profile_files() {
        let s = Profile::from_json(r#"{"type": "sinusoidal", "a": 0.01, "lambda": 2}"#).unwrap();
        assert_eq!(s, Profile::Sinusoidal(SinusoidalProfile::new(0.01, 2.0).unwrap()));
        let m = Profile::from_json(
            r#"{"type": "modes", "modes": [{"qx": 1, "qy": 0, "re": 0.01, "im": 0}]}"#,
        )
        .unwrap();
        assert_eq!(m.to_fourier().modes().len(), 1);
        assert!(Profile::from_json(r#"{"type": "sinusoidal", "a": 0.01}"#).is_err());
        assert!(Profile::from_json(r#"{"type": "modes", "modes": [{"qx": 0, "qy": 0, "re": 1}]}"#).is_err());
    }

    #[test]
    fn validity_bands() {
        assert_eq!(Validity::from_ratio(0.01), Validity::Ok);
        assert_eq!(Validity::from_ratio(0.05), Validity::Marginal);
        assert_eq!(Validity::from_ratio(0.2), Validity::Violated);
    }
}

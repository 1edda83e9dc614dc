//! Electrostatic and van der Waals interaction between a neutral dipolar
//! particle embedded in a dielectric `eps2` and a second dielectric `eps1`
//! whose interface carries a small corrugation `z = h(x, y)`.
//!
//! Energies are exact to first order in the corrugation amplitude. The
//! lateral part of a sinusoidal corrugation reduces to
//! `-A cos(k x0 - delta)`, and the phase `delta` decides whether the particle
//! settles over a peak, a valley, or in between. [`regimes`] sweeps that
//! classification over parameter space; [`oracle`] re-derives the closed
//! forms from the Green function by brute-force quadrature and finite
//! differences.
//!
//! All energies are in reduced units: `U * eps0`, i.e. SI formulas with the
//! vacuum permittivity set to one. Lengths share whatever unit `z0` is
//! given in.

// `!(x > 0.0)` is used on purpose so NaN is rejected with the other bad inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod corrugation;
pub mod dipole;
pub mod energy;
pub mod error;
pub mod greens;
pub mod kernels;
pub mod media;
pub mod oracle;
pub mod presets;
pub mod quad;
pub mod regimes;
pub mod roots;
pub mod specialfn;

pub use corrugation::{FourierProfile, Mode, SinusoidalProfile, SpectralLine};
pub use dipole::{ClassicalDipole, DipoleTensor, EmbeddingFactor, PolarizabilitySample};
pub use corrugation::Validity;
pub use energy::{Channel, EnergyValue, Order, PhaseDecomposition};
pub use error::{Error, Result};
pub use kernels::{Component, Family, KernelMatrix, RadialKernel};
pub use media::{DielectricPair, GeometryPoint};
pub use regimes::{RegimeKind, RegimeLabel};

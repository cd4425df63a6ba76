//! Numerics for the square-root Klein-Gordon (Salpeter) equation in one
//! spatial dimension, together with the family of relativistic probability
//! densities and currents built on it.
//!
//! Natural units are used throughout: ħ = c = m = 1, so lengths are in
//! Compton wavelengths, momenta in units of mc and energies in units of mc².

pub mod covariance;
pub mod dirac;
pub mod error;
pub mod figures;
pub mod grid;
pub mod kernels;
pub mod salpeter;
pub mod states;
pub mod thresholds;

pub use covariance::Boost;
pub use dirac::DiracField;
pub use error::{Error, Result};
pub use grid::{CurrentField, DensityField, Grid1D, MomentumSpectrum, RealField, WaveFunction};
pub use kernels::KernelKind;
pub use states::{PlaneWave, PlaneWaveSuperposition};

//! Semiclassical model of a gravitational-wave strain acting on a hydrogen-like atom.
//!
//! The crate is organised bottom-up:
//!
//! * [`hydrogenics`] and [`quadrature`]: hydrogenic basis functions and the
//!   integration rules everything else is built on.
//! * [`distortion`]: the strain map, the distorted wavefunction and three
//!   routes to its spectral decomposition (exact quadrature, the k-series and
//!   the closed-form first-order coefficients).
//! * [`transitions`]: quantum-defect level energies, strain-shifted energies and
//!   the transition detuning.
//! * [`rabi`]: two-level Rabi dynamics under that detuning.
//! * [`verify`], [`config`], [`output`] and [`cli`]: batch front-end plumbing.
//!
//! All physics is in atomic units (a₀ = ħ = mₑ = e = 1, energies in Hartree).
//! Conversions to SI live in [`constants`] and are only applied at the CLI
//! boundary.

pub mod cli;
pub mod config;
pub mod constants;
pub mod distortion;
pub mod error;
pub mod hydrogenics;
pub mod output;
pub mod quadrature;
pub mod rabi;
pub mod summation;
pub mod transitions;
pub mod verify;

pub use error::{Error, Result};
pub use hydrogenics::AtomicState;

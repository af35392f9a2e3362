//! CODATA 2018 constants and unit conversions.
//!
//! This is the only place SI values appear; the numerical core works in
//! atomic units throughout.

use std::f64::consts::PI;

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Planck constant, J s (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);
/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Hartree energy, J.
pub const HARTREE_J: f64 = 4.359_744_722_207_1e-18;
/// Hartree energy, eV.
pub const HARTREE_EV: f64 = 27.211_386_245_988;
/// Bohr radius, m.
pub const BOHR_RADIUS_M: f64 = 5.291_772_109_03e-11;

pub fn hartree_to_joule(e: f64) -> f64 {
    e * HARTREE_J
}

pub fn hartree_to_ev(e: f64) -> f64 {
    e * HARTREE_EV
}

pub fn ev_to_hartree(e: f64) -> f64 {
    e / HARTREE_EV
}

/// Cyclic frequency (Hz) of a photon with the given energy in Hartree.
pub fn hartree_to_hz(e: f64) -> f64 {
    hartree_to_joule(e) / PLANCK
}

/// Angular frequency (rad/s) corresponding to an energy in Hartree, E/ħ.
pub fn hartree_to_rad_per_s(e: f64) -> f64 {
    hartree_to_joule(e) / HBAR
}

pub fn hz_to_rad_per_s(f: f64) -> f64 {
    2.0 * PI * f
}

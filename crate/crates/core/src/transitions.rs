//! Level energies, strain-shifted energies and the transition detuning.
//!
//! Energies follow the quantum-defect Rydberg formula
//! E = −1 / (2 (n − δ_l)²) Hartree; an empty [`DefectTable`] is pure hydrogen.
//!
//! The strain mixes |n,l⟩ with |n,l±2⟩, so the shifted level is
//! E′ = C₀² E_{n,l} + C₊₂² E_{n,l+2} + C₋₂² E_{n,l−2}, with the general
//! closed-form coefficient set. To first order
//! E′ − E ≈ −2 S_p E (n+l+1)³ / ((2l−1)(2l+3)); the remainder κ is O(S_p²).
//! Note that (2l−1)(2l+3) = −3 at l = 0, which flips the sign of the s-level
//! shift relative to the naive reading.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constants;
use crate::distortion::{general_closed_form, Strain};
use crate::hydrogenics::{orbital_letter, AtomicState};
use crate::{Error, Result};

/// Quantum defects δ_l per orbital angular momentum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectTable {
    pub species: String,
    defects: BTreeMap<u32, f64>,
}

impl DefectTable {
    pub fn new(species: impl Into<String>) -> Self {
        Self { species: species.into(), defects: BTreeMap::new() }
    }

    pub fn hydrogen() -> Self {
        Self::new("hydrogen")
    }

    /// Leading-order rubidium defects (s, p½, d3/2, f), used as a documented
    /// example of a Rydberg species. Higher l are treated as hydrogenic.
    pub fn rb_example() -> Self {
        let mut t = Self::new("rb-example");
        for (l, d) in [(0, 3.131_180_4), (1, 2.654_884_9), (2, 1.348_091_71), (3, 0.016_519_2)] {
            t.defects.insert(l, d);
        }
        t
    }

    pub fn with_defect(mut self, l: u32, defect: f64) -> Result<Self> {
        self.set_defect(l, defect)?;
        Ok(self)
    }

    pub fn set_defect(&mut self, l: u32, defect: f64) -> Result<()> {
        if !(defect >= 0.0 && defect.is_finite()) {
            return Err(Error::Config(format!("quantum defect for l={l} must be finite and >= 0, got {defect}")));
        }
        self.defects.insert(l, defect);
        Ok(())
    }

    pub fn defect(&self, l: u32) -> f64 {
        self.defects.get(&l).copied().unwrap_or(0.0)
    }

    pub fn is_hydrogenic(&self) -> bool {
        self.defects.values().all(|&d| d == 0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.defects.iter().map(|(&l, &d)| (l, d))
    }

    /// Short description of the energy model, recorded with every result.
    pub fn energy_model(&self) -> String {
        if self.is_hydrogenic() {
            format!("rydberg formula, hydrogenic ({})", self.species)
        } else {
            let defects: Vec<String> = self
                .entries()
                .map(|(l, d)| match orbital_letter(l) {
                    Some(c) => format!("{c}={d}"),
                    None => format!("l{l}={d}"),
                })
                .collect();
            format!("rydberg formula with quantum defects ({}: {})", self.species, defects.join(" "))
        }
    }
}

/// E = −1 / (2 (n − δ_l)²) Hartree.
pub fn level_energy(state: AtomicState, defects: &DefectTable) -> Result<f64> {
    let defect = defects.defect(state.l);
    let n_eff = state.n as f64 - defect;
    if !(n_eff > 0.0) {
        return Err(Error::DefectTooLarge { n: state.n, defect });
    }
    Ok(-0.5 / (n_eff * n_eff))
}

/// (n+l+1)³ / ((2l−1)(2l+3)).
pub fn shift_factor(state: AtomicState) -> f64 {
    let (n, l) = (state.n as f64, state.l as f64);
    (n + l + 1.0).powi(3) / ((2.0 * l - 1.0) * (2.0 * l + 3.0))
}

/// Leading-order dE′/dS_p = −2 E (n+l+1)³ / ((2l−1)(2l+3)).
pub fn level_shift_slope(energy: f64, state: AtomicState) -> f64 {
    -2.0 * energy * shift_factor(state)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftedEnergy {
    pub state: AtomicState,
    pub strain: Strain,
    /// E (Hartree).
    pub unperturbed: f64,
    /// C₀²E + C₊₂²E₊₂ + C₋₂²E₋₂ (Hartree).
    pub full: f64,
    /// Leading-order slope dE′/dS_p (Hartree per unit strain).
    pub leading_slope: f64,
    /// full − E − slope·S_p.
    pub kappa: f64,
}

pub fn shifted_energy(state: AtomicState, strain: Strain, defects: &DefectTable) -> Result<ShiftedEnergy> {
    state.require_axial()?;
    let e = level_energy(state, defects)?;
    let coeffs = general_closed_form(state)?;
    let mut full = {
        let c0 = coeffs.c0.at(strain);
        c0 * c0 * e
    };
    for (target, c) in coeffs.targets() {
        if target == state {
            continue;
        }
        let amp = c.at(strain);
        if amp != 0.0 {
            full += amp * amp * level_energy(target, defects)?;
        }
    }
    let leading_slope = level_shift_slope(e, state);
    Ok(ShiftedEnergy {
        state,
        strain,
        unperturbed: e,
        full,
        leading_slope,
        kappa: full - e - leading_slope * strain.value(),
    })
}

/// A driven transition between two levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionSpec {
    pub lower: AtomicState,
    pub upper: AtomicState,
    pub lower_energy: f64,
    pub upper_energy: f64,
    pub delta_e: f64,
    pub energy_model: String,
}

impl TransitionSpec {
    pub fn new(lower: AtomicState, upper: AtomicState, defects: &DefectTable) -> Result<Self> {
        lower.require_axial()?;
        upper.require_axial()?;
        let lower_energy = level_energy(lower, defects)?;
        let upper_energy = level_energy(upper, defects)?;
        if !(upper_energy > lower_energy) {
            return Err(Error::Domain(format!(
                "upper level {} ({upper_energy:e} Ha) must lie above lower level {} ({lower_energy:e} Ha)",
                upper.label(),
                lower.label()
            )));
        }
        Ok(Self {
            lower,
            upper,
            lower_energy,
            upper_energy,
            delta_e: upper_energy - lower_energy,
            energy_model: defects.energy_model(),
        })
    }

    pub fn label(&self) -> String {
        format!("{}-{}", self.lower.label(), self.upper.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetuningResult {
    /// dδ/dS_p, Hartree per unit strain.
    pub slope: f64,
    /// δ at the requested strain, Hartree.
    pub at_strain: Option<f64>,
    /// (lower, upper) dE′/dS_p.
    pub per_level_shift_slopes: (f64, f64),
}

impl DetuningResult {
    pub fn at(&self, strain: Strain) -> f64 {
        self.slope * strain.value()
    }
}

/// δ = −2 S_p [E₂ s₂ − E₁ s₁], s_i = (n_i+l_i+1)³/((2l_i−1)(2l_i+3)).
pub fn transition_detuning(t: &TransitionSpec, strain: Strain) -> DetuningResult {
    let lower = level_shift_slope(t.lower_energy, t.lower);
    let upper = level_shift_slope(t.upper_energy, t.upper);
    let slope = upper - lower;
    DetuningResult {
        slope,
        at_strain: Some(slope * strain.value()),
        per_level_shift_slopes: (lower, upper),
    }
}

/// Δλ = c Δν / ν² for a detuning δ/h on a line of frequency ν.
pub fn wavelength_shift_hz(transition_frequency: f64, detuning_hz: f64) -> Result<f64> {
    if !(transition_frequency > 0.0 && transition_frequency.is_finite()) {
        return Err(Error::Domain(format!(
            "transition frequency must be positive, got {transition_frequency}"
        )));
    }
    Ok(constants::SPEED_OF_LIGHT * detuning_hz / (transition_frequency * transition_frequency))
}

/// Wavelength change (m) of a line at `transition_frequency` (Hz) under the
/// detuning at `strain`.
pub fn wavelength_shift(transition_frequency: f64, detuning: &DetuningResult, strain: Strain) -> Result<f64> {
    wavelength_shift_hz(transition_frequency, constants::hartree_to_hz(detuning.at(strain)))
}

//! The strain map, the distorted wavefunction and its spectral decomposition.
//!
//! Three independent routes produce a [`SpectralDecomposition`]:
//!
//! * [`numeric`]: the exact overlap integrals of the distorted state with the
//!   unperturbed basis, by 2D quadrature. This is the ground truth.
//! * [`series`]: the k-expansion in powers of the strain, combining the
//!   printed radial factors with numerically integrated angular factors
//!   ([`theta`]).
//! * [`closed_form`]: the first-order coefficients C₀, C₊₂, C₋₂.
//!
//! The two analytic routes drop terms the numeric route keeps; comparing them
//! is part of the verification report rather than something hidden here.
//!
//! Physical strains (~1e−20) are far below what a direct evaluation of
//! C − 1 can resolve, so first-order results are carried as slopes
//! ([`LinearResponseCoefficient`]).

pub mod closed_form;
pub mod numeric;
pub mod series;
pub mod strain;
pub mod theta;

use serde::{Deserialize, Serialize};

use crate::hydrogenics::AtomicState;
use crate::{Error, Result};

pub use closed_form::{closed_form_coefficients, closed_form_decomposition, general_closed_form, ClosedFormCoefficients};
pub use numeric::{direct_norm, linear_response, numeric_decomposition, overlap_numeric, LinearityReport};
pub use series::{laguerre_shift_identity_check, series_decomposition, series_decomposition_with, RadialFactor, DEFAULT_K_MAX};
pub use strain::{distorted_wavefunction, strain_factor, strain_factor_cos};
pub use theta::{theta_component, THETA_K_MAX};

/// Largest |S_p| accepted; the map degenerates as S_p → 1.
pub const MAX_STRAIN: f64 = 0.5;

/// Dimensionless in-plane strain amplitude S_p.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Strain(f64);

impl Strain {
    pub fn new(s_p: f64) -> Result<Self> {
        if !s_p.is_finite() || s_p.abs() >= MAX_STRAIN {
            return Err(Error::Domain(format!(
                "strain must satisfy |S_p| < {MAX_STRAIN}, got {s_p}"
            )));
        }
        Ok(Self(s_p))
    }

    pub const fn zero() -> Self {
        Self(0.0)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// First-order response C ≈ C(0) + slope·S_p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearResponseCoefficient {
    pub value_at_unit_strain: f64,
    pub zeroth_order: f64,
}

impl LinearResponseCoefficient {
    pub fn diagonal(slope: f64) -> Self {
        Self { value_at_unit_strain: slope, zeroth_order: 1.0 }
    }

    pub fn off_diagonal(slope: f64) -> Self {
        Self { value_at_unit_strain: slope, zeroth_order: 0.0 }
    }

    pub fn zero() -> Self {
        Self::off_diagonal(0.0)
    }

    pub fn slope(&self) -> f64 {
        self.value_at_unit_strain
    }

    pub fn at(&self, strain: Strain) -> f64 {
        self.zeroth_order + self.value_at_unit_strain * strain.value()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    NumericOracle,
    PaperSeries,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::NumericOracle => "numeric_oracle",
            Method::PaperSeries => "paper_series",
            Method::ClosedForm => "closed_form",
        })
    }
}

/// Basis window for numeric decompositions: n ∈ [n₀−Δn, n₀+Δn], l ≤ l_max.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub delta_n: u32,
    pub l_max: u32,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { delta_n: 4, l_max: 10 }
    }
}

impl Truncation {
    /// Target states in (n, l) order, m = 0.
    pub fn targets(&self, source: AtomicState) -> Vec<AtomicState> {
        let n_lo = source.n.saturating_sub(self.delta_n).max(1);
        let n_hi = source.n + self.delta_n;
        let mut out = Vec::new();
        for n in n_lo..=n_hi {
            for l in 0..=self.l_max.min(n - 1) {
                out.push(AtomicState { n, l, m: 0 });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub state: AtomicState,
    pub coefficient: f64,
}

/// ψ′ expanded over unperturbed eigenstates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDecomposition {
    pub source: AtomicState,
    pub strain: Strain,
    pub method: Method,
    /// Entries sorted by (n, l).
    pub entries: Vec<Entry>,
    /// Series truncation order; 0 for the numeric and closed-form routes.
    pub k_max: u32,
    /// Σ coefficient².
    pub norm_sum: f64,
    /// ∫|ψ′|², numeric route only.
    pub direct_norm: Option<f64>,
    pub truncation: Option<Truncation>,
    pub warnings: Vec<String>,
}

impl SpectralDecomposition {
    pub(crate) fn assemble(
        source: AtomicState,
        strain: Strain,
        method: Method,
        mut entries: Vec<Entry>,
        k_max: u32,
    ) -> Self {
        entries.sort_by_key(|e| (e.state.n, e.state.l));
        let norm_sum = crate::summation::compensated_sum(entries.iter().map(|e| e.coefficient * e.coefficient));
        Self {
            source,
            strain,
            method,
            entries,
            k_max,
            norm_sum,
            direct_norm: None,
            truncation: None,
            warnings: Vec::new(),
        }
    }

    pub fn coefficient(&self, state: AtomicState) -> Option<f64> {
        self.entries.iter().find(|e| e.state == state).map(|e| e.coefficient)
    }

    /// Entry with the largest |coefficient|; ties go to the earlier (n, l).
    pub fn dominant(&self) -> Option<&Entry> {
        self.entries.iter().fold(None, |best: Option<&Entry>, e| match best {
            Some(b) if b.coefficient.abs() >= e.coefficient.abs() => Some(b),
            _ => Some(e),
        })
    }

    /// |Σ C² − ∫|ψ′|²| when the direct norm is available.
    pub fn parseval_gap(&self) -> Option<f64> {
        self.direct_norm.map(|d| (self.norm_sum - d).abs())
    }
}

//! First-order closed-form coefficients C₀, C₊₂, C₋₂.
//!
//! Two printed formula sets exist. For an s-state source the dedicated pair
//!
//! ```text
//! C₀ = 1 − (S_p/3)(n₀+1)³
//! C₂ = S_p · 4(n₀+1) / (3(n₀+2)²) · sqrt((n₀²−1)(n₀²−4)/5)
//! ```
//!
//! and for l₀ ≥ 1 the general set
//!
//! ```text
//! C₀  = 1 − S_p (n₀+l₀+1)³ / ((2l₀−1)(2l₀+3))
//! C₊₂ = 2 S_p (l₀+1)(l₀+2)/(2l₀+3) · sqrt( ((n₀+l₀+1)/(n₀+l₀+2))³ (n₀−l₀−1)(n₀−l₀−2) / ((2l₀+1)(2l₀+5)) )
//! C₋₂ = 2 S_p l₀(l₀−1)(n₀+l₀+1)³/(2l₀−1) · sqrt( (n₀+l₀)³(n₀+l₀−1)³ / ((n₀−l₀)(n₀−l₀+1)(2l₀+1)(2l₀−3)) )
//! ```
//!
//! At l₀ = 0 the two agree on C₊₂ but the general C₀ has the opposite sign
//! of its first-order term, since (2l₀−1) = −1 there. [`closed_form_coefficients`]
//! picks the set by l₀; [`general_closed_form`] always uses the general set,
//! which is what the level-shift formula in [`crate::transitions`] is built on.
//! A coefficient whose target state does not exist is exactly zero.

use serde::{Deserialize, Serialize};

use crate::hydrogenics::AtomicState;
use crate::Result;

use super::{Entry, LinearResponseCoefficient, Method, SpectralDecomposition, Strain};

/// |slope|·S_p above which a first-order coefficient is flagged as unreliable.
pub const SANITY_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormCoefficients {
    pub source: AtomicState,
    pub c0: LinearResponseCoefficient,
    pub c_plus2: LinearResponseCoefficient,
    pub c_minus2: LinearResponseCoefficient,
}

impl ClosedFormCoefficients {
    /// (target state, coefficient) for every target that exists.
    pub fn targets(&self) -> Vec<(AtomicState, LinearResponseCoefficient)> {
        let AtomicState { n, l, .. } = self.source;
        let mut out = Vec::with_capacity(3);
        if l >= 2 {
            out.push((AtomicState { n, l: l - 2, m: 0 }, self.c_minus2));
        }
        out.push((self.source, self.c0));
        if l + 2 < n {
            out.push((AtomicState { n, l: l + 2, m: 0 }, self.c_plus2));
        }
        out
    }

    /// Human-readable warnings for coefficients whose first-order term is large.
    pub fn sanity_warnings(&self, strain: Strain) -> Vec<String> {
        let s = strain.value().abs();
        [("C0", self.c0), ("C+2", self.c_plus2), ("C-2", self.c_minus2)]
            .into_iter()
            .filter(|(_, c)| c.slope().abs() * s > SANITY_THRESHOLD)
            .map(|(name, c)| {
                format!(
                    "{name} first-order term |{:e} * {:e}| exceeds {SANITY_THRESHOLD}; \
                     linear approximation is unreliable",
                    c.slope(),
                    strain.value()
                )
            })
            .collect()
    }
}

fn s_state_c0_slope(n: f64) -> f64 {
    -(n + 1.0).powi(3) / 3.0
}

fn s_state_c2_slope(n: f64) -> f64 {
    if n < 3.0 {
        return 0.0;
    }
    4.0 * (n + 1.0) / (3.0 * (n + 2.0).powi(2)) * ((n * n - 1.0) * (n * n - 4.0) / 5.0).sqrt()
}

fn general_c0_slope(n: f64, l: f64) -> f64 {
    -(n + l + 1.0).powi(3) / ((2.0 * l - 1.0) * (2.0 * l + 3.0))
}

fn general_c_plus2_slope(n: u32, l: u32) -> f64 {
    if l + 2 >= n {
        return 0.0;
    }
    let (n, l) = (n as f64, l as f64);
    let ratio = ((n + l + 1.0) / (n + l + 2.0)).powi(3);
    let radicand = ratio * (n - l - 1.0) * (n - l - 2.0) / ((2.0 * l + 1.0) * (2.0 * l + 5.0));
    2.0 * (l + 1.0) * (l + 2.0) / (2.0 * l + 3.0) * radicand.sqrt()
}

fn general_c_minus2_slope(n: u32, l: u32) -> f64 {
    if l < 2 {
        return 0.0;
    }
    let (n, l) = (n as f64, l as f64);
    let radicand = (n + l).powi(3) * (n + l - 1.0).powi(3)
        / ((n - l) * (n - l + 1.0) * (2.0 * l + 1.0) * (2.0 * l - 3.0));
    2.0 * l * (l - 1.0) * (n + l + 1.0).powi(3) / (2.0 * l - 1.0) * radicand.sqrt()
}

/// General-set coefficients for any l₀ (including 0).
pub fn general_closed_form(source: AtomicState) -> Result<ClosedFormCoefficients> {
    source.require_axial()?;
    let (n, l) = (source.n, source.l);
    Ok(ClosedFormCoefficients {
        source,
        c0: LinearResponseCoefficient::diagonal(general_c0_slope(n as f64, l as f64)),
        c_plus2: LinearResponseCoefficient::off_diagonal(general_c_plus2_slope(n, l)),
        c_minus2: LinearResponseCoefficient::off_diagonal(general_c_minus2_slope(n, l)),
    })
}

/// Closed-form coefficients: the s-state pair for l₀ = 0, the general set otherwise.
pub fn closed_form_coefficients(source: AtomicState) -> Result<ClosedFormCoefficients> {
    source.require_axial()?;
    if source.l > 0 {
        return general_closed_form(source);
    }
    let n = source.n as f64;
    Ok(ClosedFormCoefficients {
        source,
        c0: LinearResponseCoefficient::diagonal(s_state_c0_slope(n)),
        c_plus2: LinearResponseCoefficient::off_diagonal(s_state_c2_slope(n)),
        c_minus2: LinearResponseCoefficient::zero(),
    })
}

/// The closed-form coefficients as a decomposition at a given strain.
/// Entries that are exactly zero are omitted.
pub fn closed_form_decomposition(source: AtomicState, strain: Strain) -> Result<SpectralDecomposition> {
    let coeffs = closed_form_coefficients(source)?;
    let entries = coeffs
        .targets()
        .into_iter()
        .map(|(state, c)| Entry { state, coefficient: c.at(strain) })
        .filter(|e| e.coefficient != 0.0)
        .collect();
    let mut out = SpectralDecomposition::assemble(source, strain, Method::ClosedForm, entries, 0);
    out.warnings = coeffs.sanity_warnings(strain);
    for w in &out.warnings {
        log::warn!("{source}: {w}");
    }
    Ok(out)
}

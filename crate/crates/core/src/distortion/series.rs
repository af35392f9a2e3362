//! The k-series route to the decomposition of an s-state source.
//!
//! Expanding the Laguerre polynomial of the stretched argument about the
//! unstretched one gives
//!
//! ```text
//! L¹_{n₀−1}(A x) = e^{−(1−A)x} Σ_k ((1−A)x)^k / k! · L^{1+k}_{n₀−1}(x),   x = 2r/n₀
//! ```
//!
//! and with 1 − A_θ ≈ S_p cos 2θ the distorted state separates into
//! Σ_k S_p^k/k! R′_k(r) cos^k(2θ)/sqrt(4π). Each term projects onto Y_l^0
//! through sqrt(2l+1) Θ_{k,l} and onto the radial basis through a radial
//! factor. Two radial factors are available:
//!
//! * [`RadialFactor::Printed`]: the closed-form value
//!   sqrt((n₀−1)!(n₀−l−1)! / [n₀!(n₀+l)!]³) · [(n₀+k)!]³ / (n₀−l−1)!,
//!   diagonal in n. At k_max = 1 this reproduces the closed-form C₀ and C₂.
//! * [`RadialFactor::Numeric`]: ∫ R′_k R_{n,l} r² dr by quadrature with
//!   R′_k(r) = N_{n₀,0} e^{−x/2} x^k L^{1+k}_{n₀−1}(x) in the normalisation
//!   of [`crate::hydrogenics`], over the whole truncation window.
//!
//! The two disagree (for k = 1, l = 0 the quadrature gives 3(n₀+1)/2 where
//! the printed factor is (n₀+1)³); the numeric variant exists to measure that.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hydrogenics::{laguerre_poly, ln_factorial, ln_radial_norm, AtomicState, RadialFunction};
use crate::quadrature::{integrate_half_line, QuadratureSpec};
use crate::{Error, Result};

use super::theta::{theta_component, THETA_K_MAX};
use super::{Entry, Method, SpectralDecomposition, Strain, Truncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialFactor {
    Printed,
    Numeric,
}

impl std::fmt::Display for RadialFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RadialFactor::Printed => "printed",
            RadialFactor::Numeric => "numeric",
        })
    }
}

/// Default series truncation.
pub const DEFAULT_K_MAX: u32 = 3;

/// Printed radial factor for the (n₀, l) target at order k; zero when l ≥ n₀.
pub fn printed_radial_factor(n0: u32, l: u32, k: u32) -> f64 {
    if l >= n0 {
        return 0.0;
    }
    let (n0, l, k) = (n0 as u64, l as u64, k as u64);
    let ln = 0.5 * (ln_factorial(n0 - 1) + ln_factorial(n0 - l - 1)
        - 3.0 * (ln_factorial(n0) + ln_factorial(n0 + l)))
        + 3.0 * ln_factorial(n0 + k)
        - ln_factorial(n0 - l - 1);
    ln.exp()
}

/// R′_k(r) = N_{n₀,0} e^{−x/2} x^k L^{1+k}_{n₀−1}(x), x = 2r/n₀.
pub fn series_radial_function(n0: u32, k: u32, r: f64) -> f64 {
    let x = 2.0 * r / n0 as f64;
    let poly = laguerre_poly(n0 - 1, (1 + k) as f64, x);
    let pow = if k == 0 { 1.0 } else { x.powi(k as i32) };
    (ln_radial_norm(n0, 0) - 0.5 * x).exp() * pow * poly
}

/// ∫₀^∞ R′_k(r) R_target(r) r² dr.
pub fn numeric_radial_factor(n0: u32, k: u32, target: AtomicState, quad: &QuadratureSpec) -> Result<f64> {
    let rt = RadialFunction::of(target);
    let scale = 1.0 / n0 as f64 + 1.0 / target.n as f64;
    integrate_half_line(quad, scale, |r| series_radial_function(n0, k, r) * rt.eval(r) * r * r)
}

fn check_series_args(source: AtomicState, k_max: u32) -> Result<()> {
    source.require_axial()?;
    if source.l != 0 {
        return Err(Error::Domain(format!(
            "the k-series is only developed for l0 = 0 sources, got {source}"
        )));
    }
    if k_max < 1 || k_max > THETA_K_MAX {
        return Err(Error::Domain(format!("k_max must lie in [1, {THETA_K_MAX}], got {k_max}")));
    }
    Ok(())
}

/// Series coefficient for a target given its radial factors per k.
fn series_coefficient<F>(l: u32, strain: Strain, k_max: u32, radial: F) -> Result<f64>
where
    F: Fn(u32) -> Result<f64>,
{
    let s = strain.value();
    let mut acc = crate::summation::NeumaierSum::new();
    let mut k_fact = 1.0;
    for k in 0..=k_max {
        if k > 0 {
            k_fact *= k as f64;
        }
        if 2 * k < l {
            continue;
        }
        let theta = theta_component(k, l)?;
        if theta == 0.0 {
            continue;
        }
        let weight = if k == 0 { 1.0 } else { s.powi(k as i32) / k_fact };
        acc += weight * radial(k)? * ((2 * l + 1) as f64).sqrt() * theta;
    }
    Ok(acc.value())
}

/// Series decomposition with the printed radial factor.
pub fn series_decomposition(source: AtomicState, strain: Strain, k_max: u32) -> Result<SpectralDecomposition> {
    series_decomposition_with(
        source,
        strain,
        k_max,
        RadialFactor::Printed,
        &QuadratureSpec::default(),
        Truncation::default(),
    )
}

/// Series decomposition with a chosen radial factor. The truncation window
/// only matters for [`RadialFactor::Numeric`]; the printed factor is
/// diagonal in n. Entries that are exactly zero are omitted.
pub fn series_decomposition_with(
    source: AtomicState,
    strain: Strain,
    k_max: u32,
    radial: RadialFactor,
    quad: &QuadratureSpec,
    truncation: Truncation,
) -> Result<SpectralDecomposition> {
    check_series_args(source, k_max)?;
    let l_cap = 2 * k_max;
    let targets: Vec<AtomicState> = match radial {
        RadialFactor::Printed => (0..=l_cap.min(source.n - 1))
            .step_by(2)
            .map(|l| AtomicState { n: source.n, l, m: 0 })
            .collect(),
        RadialFactor::Numeric => {
            quad.validate()?;
            truncation
                .targets(source)
                .into_iter()
                .filter(|t| t.l % 2 == 0 && t.l <= l_cap)
                .collect()
        }
    };
    let n0 = source.n;
    let entries = targets
        .par_iter()
        .map(|&t| {
            let c = match radial {
                RadialFactor::Printed => {
                    series_coefficient(t.l, strain, k_max, |k| Ok(printed_radial_factor(n0, t.l, k)))?
                }
                RadialFactor::Numeric => {
                    series_coefficient(t.l, strain, k_max, |k| numeric_radial_factor(n0, k, t, quad))?
                }
            };
            Ok(Entry { state: t, coefficient: c })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|e| e.coefficient != 0.0)
        .collect();
    let mut out = SpectralDecomposition::assemble(source, strain, Method::PaperSeries, entries, k_max);
    if radial == RadialFactor::Numeric {
        out.truncation = Some(truncation);
    }
    Ok(out)
}

/// Both sides of the Laguerre shift identity at one point.
///
/// `lhs` = L¹_{n₀−1}(2rA/n₀); `rhs` = the exponentially prefactored k-sum,
/// stopped once the next term is below `truncation_tol` relative to the
/// partial sum (and the terms are already decreasing).
pub fn laguerre_shift_identity_check(n0: u32, a_factor: f64, r: f64, truncation_tol: f64) -> Result<(f64, f64)> {
    if n0 < 1 {
        return Err(Error::Domain("n0 must be at least 1".into()));
    }
    if !(a_factor > 0.5 && a_factor < 1.5) {
        return Err(Error::Domain(format!("a_factor must lie in (0.5, 1.5), got {a_factor}")));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("r must be finite and >= 0, got {r}")));
    }
    if !(truncation_tol > 0.0) {
        return Err(Error::Domain("truncation_tol must be positive".into()));
    }
    const K_LIMIT: u32 = 2000;

    let x = 2.0 * r / n0 as f64;
    let lhs = laguerre_poly(n0 - 1, 1.0, a_factor * x);
    let y = (1.0 - a_factor) * x;

    let mut acc = crate::summation::NeumaierSum::new();
    let mut power = 1.0; // y^k / k!
    let peak = y.abs() + n0 as f64;
    let mut k = 0u32;
    loop {
        let term = power * laguerre_poly(n0 - 1, (1 + k) as f64, x);
        acc += term;
        k += 1;
        power *= y / k as f64;
        if power == 0.0 {
            break;
        }
        let next = power * laguerre_poly(n0 - 1, (1 + k) as f64, x);
        if k as f64 > peak && next.abs() < truncation_tol * acc.value().abs() {
            break;
        }
        if k >= K_LIMIT {
            return Err(Error::NonConvergence(format!(
                "shift-identity series did not settle within {K_LIMIT} terms"
            )));
        }
    }
    let rhs = (-y).exp() * acc.value();
    Ok((lhs, rhs))
}

//! Exact overlaps of the distorted state with the unperturbed basis.
//!
//! C = 2π ∫₀^∞ ∫₀^π ψ_target(r,θ) ψ′(r,θ) r² sin θ dθ dr, evaluated in
//! μ = cos θ. For each angular node the radial integrand is
//! polynomial × e^{−(1/n_t + A_θ/n_s) r}; the transformed Laguerre rule uses
//! exactly that decay rate.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hydrogenics::{spherical_harmonic_m0_cos, AtomicState, RadialFunction};
use crate::quadrature::{gauss_legendre, integrate_half_line, QuadratureSpec, RadialScheme};
use crate::summation::NeumaierSum;
use crate::{Error, Result};

use super::strain::strain_factor_cos;
use super::{Entry, Method, SpectralDecomposition, Strain, Truncation};

fn angular_sum<F>(nodes: usize, per_node: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let rule = gauss_legendre(nodes)?;
    let mut acc = NeumaierSum::new();
    for (&mu, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * per_node(mu)?;
    }
    Ok(2.0 * PI * acc.value())
}

/// Runs `integral` at the requested angular resolution and at half of it,
/// and reports non-convergence when the two disagree beyond the tolerance.
fn with_angular_check<F>(quad: &QuadratureSpec, what: &str, integral: F) -> Result<f64>
where
    F: Fn(usize) -> Result<f64>,
{
    let fine = integral(quad.angular_node_count)?;
    let coarse_nodes = (quad.angular_node_count / 2).max(2);
    if coarse_nodes < quad.angular_node_count {
        let coarse = integral(coarse_nodes)?;
        if (fine - coarse).abs() > quad.target_abs_tolerance {
            return Err(Error::NonConvergence(format!(
                "{what}: angular estimate changed by {:e} between {coarse_nodes} and {} nodes \
                 (tolerance {:e})",
                (fine - coarse).abs(),
                quad.angular_node_count,
                quad.target_abs_tolerance
            )));
        }
    }
    Ok(fine)
}

fn check_radial_degree(quad: &QuadratureSpec, degree: u32, what: &str) -> Result<()> {
    if quad.radial_scheme == RadialScheme::GaussLaguerreTransformed
        && 2 * quad.radial_node_count <= degree as usize
    {
        return Err(Error::NonConvergence(format!(
            "{what}: {} radial nodes cannot resolve a degree-{degree} radial polynomial",
            quad.radial_node_count
        )));
    }
    Ok(())
}

/// Overlap ⟨ψ_target | ψ′_source⟩ by 2D quadrature.
pub fn overlap_numeric(
    target: AtomicState,
    source: AtomicState,
    strain: Strain,
    quad: &QuadratureSpec,
) -> Result<f64> {
    target.require_axial()?;
    source.require_axial()?;
    quad.validate()?;
    let what = format!("overlap {target} <- {source}");
    check_radial_degree(quad, target.n + source.n, &what)?;
    let rt = RadialFunction::of(target);
    let rs = RadialFunction::of(source);
    let (nt, ns) = (target.n as f64, source.n as f64);
    with_angular_check(quad, &what, |nodes| {
        angular_sum(nodes, |mu| {
            let a = strain_factor_cos(mu, strain);
            let scale = 1.0 / nt + a / ns;
            let radial = integrate_half_line(quad, scale, |r| rt.eval(r) * rs.eval(r * a) * r * r)?;
            Ok(radial * spherical_harmonic_m0_cos(target.l, mu) * spherical_harmonic_m0_cos(source.l, mu))
        })
    })
}

/// ∫|ψ′|² over all space.
pub fn direct_norm(source: AtomicState, strain: Strain, quad: &QuadratureSpec) -> Result<f64> {
    source.require_axial()?;
    quad.validate()?;
    let what = format!("direct norm of distorted {source}");
    check_radial_degree(quad, 2 * source.n, &what)?;
    let rs = RadialFunction::of(source);
    let ns = source.n as f64;
    with_angular_check(quad, &what, |nodes| {
        angular_sum(nodes, |mu| {
            let a = strain_factor_cos(mu, strain);
            let radial = integrate_half_line(quad, 2.0 * a / ns, |r| {
                let v = rs.eval(r * a);
                v * v * r * r
            })?;
            let y = spherical_harmonic_m0_cos(source.l, mu);
            Ok(radial * y * y)
        })
    })
}

/// Numeric-oracle decomposition over the truncation window.
///
/// Overlaps are computed in parallel; entries come back in (n, l) order.
pub fn numeric_decomposition(
    source: AtomicState,
    strain: Strain,
    quad: &QuadratureSpec,
    truncation: Truncation,
) -> Result<SpectralDecomposition> {
    source.require_axial()?;
    quad.validate()?;
    let targets = truncation.targets(source);
    let entries = targets
        .par_iter()
        .map(|&t| overlap_numeric(t, source, strain, quad).map(|c| Entry { state: t, coefficient: c }))
        .collect::<Result<Vec<_>>>()?;
    let mut out = SpectralDecomposition::assemble(source, strain, Method::NumericOracle, entries, 0);
    out.direct_norm = Some(direct_norm(source, strain, quad)?);
    out.truncation = Some(truncation);
    Ok(out)
}

/// C/S_p measured at several strains for one (target, source) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearityReport {
    pub target: AtomicState,
    pub source: AtomicState,
    /// (S_p, (C − C(0))/S_p)
    pub ratios: Vec<(f64, f64)>,
    /// (max − min) / |mean| of the ratios.
    pub relative_spread: f64,
}

impl LinearityReport {
    pub fn mean_ratio(&self) -> f64 {
        self.ratios.iter().map(|r| r.1).sum::<f64>() / self.ratios.len() as f64
    }

    pub fn is_linear_within(&self, rel: f64) -> bool {
        self.relative_spread <= rel
    }
}

/// Measures the strain response of a single overlap.
pub fn linear_response(
    target: AtomicState,
    source: AtomicState,
    strains: &[f64],
    quad: &QuadratureSpec,
) -> Result<LinearityReport> {
    if strains.is_empty() {
        return Err(Error::Domain("linear_response needs at least one strain".into()));
    }
    let zeroth = if target == source { 1.0 } else { 0.0 };
    let ratios = strains
        .iter()
        .map(|&s| {
            let c = overlap_numeric(target, source, Strain::new(s)?, quad)?;
            Ok((s, (c - zeroth) / s))
        })
        .collect::<Result<Vec<_>>>()?;
    let max = ratios.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let mean = ratios.iter().map(|r| r.1).sum::<f64>() / ratios.len() as f64;
    Ok(LinearityReport {
        target,
        source,
        ratios,
        relative_spread: (max - min) / mean.abs(),
    })
}

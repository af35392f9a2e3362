//! Gaussian quadrature rules and the integration drivers built on them.
//!
//! Two families are provided:
//!
//! * Gauss–Legendre on a finite interval (polar-angle integrals, taken in
//!   μ = cos θ so the sin θ measure is absorbed).
//! * Gauss–Laguerre on the half-line. Radial integrands here are always
//!   polynomial × e^{−c r}; substituting u = c r turns them into the
//!   exponential weight the rule integrates exactly, so for a fixed number of
//!   nodes the result is exact up to rounding whenever the polynomial degree
//!   is below 2N. The Laguerre weights are stored pre-multiplied by e^{u}
//!   ("scaled" weights), which keeps them finite for every node.
//!
//! An adaptive-panel Gauss–Legendre driver covers integrands whose decay rate
//! is not known in advance. It fails loudly when its panel budget runs out.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::summation::NeumaierSum;
use crate::{Error, Result};

/// Largest node count accepted by either rule.
pub const MAX_NODES: usize = 1000;

/// Panels the adaptive driver may create before giving up.
pub const ADAPTIVE_PANEL_BUDGET: usize = 4096;

/// Upper cut-off of the adaptive radial domain, in units of the decay length.
const ADAPTIVE_CUTOFF: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialScheme {
    GaussLaguerreTransformed,
    AdaptivePanel,
}

impl FromStr for RadialScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "gauss_laguerre_transformed" | "gauss_laguerre" | "laguerre" => {
                Ok(RadialScheme::GaussLaguerreTransformed)
            }
            "adaptive_panel" | "adaptive" => Ok(RadialScheme::AdaptivePanel),
            other => Err(Error::UnsupportedQuadrature(format!(
                "unknown radial scheme '{other}'"
            ))),
        }
    }
}

impl std::fmt::Display for RadialScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RadialScheme::GaussLaguerreTransformed => "gauss_laguerre_transformed",
            RadialScheme::AdaptivePanel => "adaptive_panel",
        })
    }
}

/// Node counts and tolerances for the 2D (r, θ) integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub radial_node_count: usize,
    pub angular_node_count: usize,
    pub radial_scheme: RadialScheme,
    pub target_abs_tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radial_node_count: 200,
            angular_node_count: 96,
            radial_scheme: RadialScheme::GaussLaguerreTransformed,
            target_abs_tolerance: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, n) in [
            ("radial_node_count", self.radial_node_count),
            ("angular_node_count", self.angular_node_count),
        ] {
            if !(2..=MAX_NODES).contains(&n) {
                return Err(Error::UnsupportedQuadrature(format!(
                    "{name} = {n} outside [2, {MAX_NODES}]"
                )));
            }
        }
        if !(self.target_abs_tolerance > 0.0) || !self.target_abs_tolerance.is_finite() {
            return Err(Error::UnsupportedQuadrature(format!(
                "target_abs_tolerance must be positive, got {}",
                self.target_abs_tolerance
            )));
        }
        Ok(())
    }

    /// Same spec with the radial node count doubled (capped at [`MAX_NODES`]).
    pub fn refined(&self) -> Self {
        Self {
            radial_node_count: (self.radial_node_count * 2).min(MAX_NODES),
            ..*self
        }
    }
}

/// A fixed set of nodes and weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ wᵢ f(xᵢ), compensated, in node order.
    pub fn apply<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        let mut acc = NeumaierSum::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(x);
        }
        acc.value()
    }
}

/// Integration domain for [`gauss_nodes`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    Finite(f64, f64),
    /// [0, ∞) for an integrand decaying like e^{−scale·r}.
    HalfLine { scale: f64 },
}

fn check_count(n: usize) -> Result<()> {
    if (2..=MAX_NODES).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedQuadrature(format!(
            "node count {n} outside [2, {MAX_NODES}]"
        )))
    }
}

type Cache = OnceLock<Mutex<HashMap<usize, Arc<Rule>>>>;

fn cached(cache: &'static Cache, n: usize, build: fn(usize) -> Rule) -> Arc<Rule> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = map.lock().expect("quadrature cache poisoned").get(&n) {
        return Arc::clone(rule);
    }
    let rule = Arc::new(build(n));
    map.lock()
        .expect("quadrature cache poisoned")
        .entry(n)
        .or_insert(rule)
        .clone()
}

/// n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> Result<Arc<Rule>> {
    check_count(n)?;
    static CACHE: Cache = OnceLock::new();
    Ok(cached(&CACHE, n, build_legendre))
}

fn build_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// n-point Gauss–Laguerre rule for ∫₀^∞ e^{−u} g(u) du.
///
/// The returned weights are scaled: `weights[i] = wᵢ e^{uᵢ}`, so that
/// ∫₀^∞ f(u) du ≈ Σ weights[i] · f(uᵢ) for f already containing its decay.
pub fn gauss_laguerre(n: usize) -> Result<Arc<Rule>> {
    check_count(n)?;
    static CACHE: Cache = OnceLock::new();
    Ok(cached(&CACHE, n, build_laguerre))
}

/// Laguerre polynomials L_{n−1}(x), L_n(x), L_{n+1}(x) as mantissas sharing
/// a common natural-log scale factor.
fn laguerre_scaled(n: usize, x: f64) -> (f64, f64, f64, f64) {
    const RESCALE: f64 = 1e150;
    let ln_rescale = RESCALE.ln();
    let mut log_scale = 0.0;
    let mut prev = 1.0; // L_0
    let mut cur = 1.0 - x; // L_1
    let mut before_prev = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        before_prev = prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            before_prev /= RESCALE;
            log_scale += ln_rescale;
        }
    }
    // after the loop: cur = L_{n+1}, prev = L_n, before_prev = L_{n-1}
    (before_prev, prev, cur, log_scale)
}

fn build_laguerre(n: usize) -> Rule {
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jacobi[(i, i)] = 2.0 * i as f64 + 1.0;
        if i + 1 < n {
            jacobi[(i, i + 1)] = i as f64 + 1.0;
            jacobi[(i + 1, i)] = i as f64 + 1.0;
        }
    }
    let mut guesses: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    guesses.sort_by(|a, b| a.total_cmp(b));

    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for mut x in guesses {
        // Newton polish on L_n; L_n' = n (L_n − L_{n−1}) / x
        for _ in 0..8 {
            let (lm1, ln, _, _) = laguerre_scaled(n, x);
            let denom = nf * (ln - lm1);
            if denom == 0.0 {
                break;
            }
            let dx = ln * x / denom;
            x -= dx;
            if dx.abs() <= 4.0 * f64::EPSILON * x {
                break;
            }
        }
        let (_, _, lp1, log_scale) = laguerre_scaled(n, x);
        let ln_weight = x.ln() - 2.0 * (nf + 1.0).ln() - 2.0 * (lp1.abs().ln() + log_scale) + x;
        nodes.push(x);
        weights.push(ln_weight.exp());
    }
    Rule { nodes, weights }
}

/// Nodes and weights for the requested interval.
///
/// Finite intervals use `spec.angular_node_count` Gauss–Legendre points;
/// the half-line uses `spec.radial_node_count` transformed Gauss–Laguerre
/// points with u = scale·r. The adaptive scheme has no fixed node set and is
/// rejected for the half-line.
pub fn gauss_nodes(spec: &QuadratureSpec, interval: Interval) -> Result<Vec<(f64, f64)>> {
    match interval {
        Interval::Finite(a, b) => {
            if !(a.is_finite() && b.is_finite() && b > a) {
                return Err(Error::Domain(format!("invalid interval [{a}, {b}]")));
            }
            let rule = gauss_legendre(spec.angular_node_count)?;
            let half = 0.5 * (b - a);
            let mid = 0.5 * (b + a);
            Ok(rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&x, &w)| (mid + half * x, half * w))
                .collect())
        }
        Interval::HalfLine { scale } => {
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(Error::Domain(format!("half-line scale must be positive, got {scale}")));
            }
            match spec.radial_scheme {
                RadialScheme::GaussLaguerreTransformed => {
                    let rule = gauss_laguerre(spec.radial_node_count)?;
                    Ok(rule
                        .nodes
                        .iter()
                        .zip(&rule.weights)
                        .map(|(&u, &w)| (u / scale, w / scale))
                        .collect())
                }
                RadialScheme::AdaptivePanel => Err(Error::UnsupportedQuadrature(
                    "adaptive_panel has no fixed half-line node set".into(),
                )),
            }
        }
    }
}

/// ∫₀^∞ f(r) dr for an integrand decaying roughly like e^{−scale·r}.
pub fn integrate_half_line<F: Fn(f64) -> f64>(spec: &QuadratureSpec, scale: f64, f: F) -> Result<f64> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Domain(format!("half-line scale must be positive, got {scale}")));
    }
    match spec.radial_scheme {
        RadialScheme::GaussLaguerreTransformed => {
            let rule = gauss_laguerre(spec.radial_node_count)?;
            Ok(rule.apply(|u| f(u / scale)) / scale)
        }
        RadialScheme::AdaptivePanel => {
            adaptive_legendre(f, 0.0, ADAPTIVE_CUTOFF / scale, spec.target_abs_tolerance)
        }
    }
}

/// Adaptive bisection with a 15-point Gauss–Legendre panel rule.
///
/// A panel is accepted when the whole-panel estimate and the sum of its two
/// halves agree to the panel's share of `abs_tol`. Panels are processed from
/// an explicit stack in a fixed order, so the result does not depend on
/// scheduling.
pub fn adaptive_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    let rule = gauss_legendre(15)?;
    let panel = |lo: f64, hi: f64| {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        half * rule.apply(|x| f(mid + half * x))
    };
    let width = b - a;
    let mut total = NeumaierSum::new();
    let mut stack = vec![(a, b, panel(a, b))];
    let mut panels = 1usize;
    while let Some((lo, hi, whole)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(lo, mid);
        let right = panel(mid, hi);
        let local_tol = abs_tol * (hi - lo) / width;
        if (whole - (left + right)).abs() <= local_tol {
            total += left;
            total += right;
            continue;
        }
        panels += 2;
        if panels > ADAPTIVE_PANEL_BUDGET {
            return Err(Error::NonConvergence(format!(
                "adaptive panel budget of {ADAPTIVE_PANEL_BUDGET} exhausted near r = {lo:.6e} \
                 (tolerance {abs_tol:e})"
            )));
        }
        // right pushed first so panels are summed left to right
        stack.push((mid, hi, right));
        stack.push((lo, mid, left));
    }
    Ok(total.value())
}

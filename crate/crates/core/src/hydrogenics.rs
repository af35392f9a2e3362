//! Hydrogenic basis functions in atomic units.
//!
//! Laguerre convention: the modern one, L₀^α = 1, L₁^α = 1 + α − x, so the
//! bound-state radial function is
//!
//! ```text
//! R_{n,l}(r) = N_{n,l} e^{−ρ/2} ρ^l L^{2l+1}_{n−l−1}(ρ),   ρ = 2r/n,
//! N_{n,l}    = sqrt( (2/n)³ (n−l−1)! / (2n (n+l)!) ).
//! ```
//!
//! Older texts write the same function with L^{2l+1}_{n+l} and carry an extra
//! [(n+l)!]² in the normalisation; mixing the two index/normalisation
//! conventions gives an unnormalised state. Here the normalisation is fixed
//! by ∫₀^∞ R² r² dr = 1, which the tests check numerically.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::quadrature::{gauss_legendre, integrate_half_line, QuadratureSpec};
use crate::{Error, Result};

/// Quantum numbers (n, l, m) of a bound hydrogenic eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AtomicState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl AtomicState {
    pub fn new(n: i64, l: i64, m: i64) -> Result<Self> {
        let reject = |reason| Err(Error::InvalidState { n, l, m, reason });
        if n < 1 {
            return reject("n must be at least 1");
        }
        if l < 0 || l > n - 1 {
            return reject("l must satisfy 0 <= l <= n-1");
        }
        if m.abs() > l {
            return reject("|m| must not exceed l");
        }
        if n > u32::MAX as i64 {
            return reject("n too large");
        }
        Ok(Self { n: n as u32, l: l as u32, m: m as i32 })
    }

    /// The m = 0 state (n, l, 0).
    pub fn axial(n: u32, l: u32) -> Result<Self> {
        Self::new(n as i64, l as i64, 0)
    }

    /// Whether (n, l) is a bound state at all, without constructing it.
    pub fn is_valid(n: i64, l: i64) -> bool {
        n >= 1 && l >= 0 && l < n
    }

    pub fn require_axial(&self) -> Result<()> {
        if self.m != 0 {
            return Err(Error::Domain(format!(
                "state {self} has m = {}; only m = 0 states are supported",
                self.m
            )));
        }
        Ok(())
    }

    /// Spectroscopic label such as `50s` or `110g`.
    pub fn label(&self) -> String {
        match orbital_letter(self.l) {
            Some(c) => format!("{}{}", self.n, c),
            None => format!("{}l{}", self.n, self.l),
        }
    }
}

impl std::fmt::Display for AtomicState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.n, self.l, self.m)
    }
}

/// Orbital letters in order of l; `j` is skipped by convention.
pub const ORBITAL_LETTERS: &[char] = &[
    's', 'p', 'd', 'f', 'g', 'h', 'i', 'k', 'l', 'm', 'n', 'o', 'q', 'r', 't', 'u', 'v', 'w', 'x', 'y', 'z',
];

pub fn orbital_letter(l: u32) -> Option<char> {
    ORBITAL_LETTERS.get(l as usize).copied()
}

pub fn orbital_l(letter: char) -> Option<u32> {
    let c = letter.to_ascii_lowercase();
    ORBITAL_LETTERS.iter().position(|&x| x == c).map(|p| p as u32)
}

/// ln(k!) by direct summation; exact enough for every k used here.
pub fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// Generalised Laguerre polynomial L_order^alpha(x), modern convention,
/// by the three-term recurrence.
pub fn laguerre(order: i64, alpha: i64, x: f64) -> Result<f64> {
    if order < 0 || alpha < 0 {
        return Err(Error::Domain(format!(
            "laguerre requires order >= 0 and alpha >= 0, got order={order}, alpha={alpha}"
        )));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("laguerre requires finite x >= 0, got {x}")));
    }
    Ok(laguerre_poly(order as u32, alpha as f64, x))
}

/// Unchecked recurrence; `alpha` may be any real > −1.
#[inline]
pub fn laguerre_poly(order: u32, alpha: f64, x: f64) -> f64 {
    if order == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..order {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// ln N_{n,l} of the radial normalisation.
pub fn ln_radial_norm(n: u32, l: u32) -> f64 {
    let nf = n as f64;
    0.5 * (3.0 * (2.0 / nf).ln() + ln_factorial((n - l - 1) as u64)
        - (2.0 * nf).ln()
        - ln_factorial((n + l) as u64))
}

/// R_{n,l}(r) in a₀^{−3/2}, normalised so that ∫ R² r² dr = 1.
pub fn radial_wavefunction(state: AtomicState, r: f64) -> f64 {
    radial_nl(state.n, state.l, r)
}

#[inline]
pub(crate) fn radial_nl(n: u32, l: u32, r: f64) -> f64 {
    RadialFunction::new(n, l).eval(r)
}

/// R_{n,l} with its normalisation precomputed, for hot loops.
#[derive(Debug, Clone, Copy)]
pub struct RadialFunction {
    n: u32,
    l: u32,
    ln_norm: f64,
}

impl RadialFunction {
    pub fn new(n: u32, l: u32) -> Self {
        Self { n, l, ln_norm: ln_radial_norm(n, l) }
    }

    pub fn of(state: AtomicState) -> Self {
        Self::new(state.n, state.l)
    }

    #[inline]
    pub fn eval(&self, r: f64) -> f64 {
        let rho = 2.0 * r / self.n as f64;
        let poly = laguerre_poly(self.n - self.l - 1, (2 * self.l + 1) as f64, rho);
        if self.l == 0 {
            (self.ln_norm - 0.5 * rho).exp() * poly
        } else if rho == 0.0 {
            0.0
        } else {
            (self.ln_norm - 0.5 * rho + self.l as f64 * rho.ln()).exp() * poly
        }
    }
}

/// Legendre polynomial P_l(x) by recurrence.
#[inline]
pub fn legendre(l: u32, x: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=l {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Y_l^0 as a function of μ = cos θ.
#[inline]
pub fn spherical_harmonic_m0_cos(l: u32, mu: f64) -> f64 {
    ((2 * l + 1) as f64 / (4.0 * PI)).sqrt() * legendre(l, mu)
}

/// Y_l^0(θ) = sqrt((2l+1)/4π) P_l(cos θ).
pub fn spherical_harmonic_m0(l: u32, theta: f64) -> f64 {
    spherical_harmonic_m0_cos(l, theta.cos())
}

/// ∫₀^∞ R_a R_b r² dr.
pub fn radial_overlap(a: AtomicState, b: AtomicState, quad: &QuadratureSpec) -> Result<f64> {
    let (ra, rb) = (RadialFunction::of(a), RadialFunction::of(b));
    let scale = 1.0 / a.n as f64 + 1.0 / b.n as f64;
    integrate_half_line(quad, scale, |r| ra.eval(r) * rb.eval(r) * r * r)
}

/// 2π ∫₀^π Y_l^0 Y_{l'}^0 sin θ dθ.
pub fn angular_overlap(l: u32, l_prime: u32, quad: &QuadratureSpec) -> Result<f64> {
    let rule = gauss_legendre(quad.angular_node_count)?;
    Ok(2.0 * PI * rule.apply(|mu| spherical_harmonic_m0_cos(l, mu) * spherical_harmonic_m0_cos(l_prime, mu)))
}

//! Two-level Rabi dynamics under a small detuning.
//!
//! With Rabi frequency ω and detuning Δ,
//!
//! ```text
//! P_e(Δ, t) = ω²/(Δ²+ω²) · sin²(sqrt(Δ²+ω²) t / 2)
//! δP        = P_e(0, t) − P_e(Δ, t)
//! ```
//!
//! For the detunings of interest Δ/ω is ~1e−8 or smaller and δP is a
//! difference of two nearly equal numbers. Writing a = ωt/2, x = Δ/ω,
//! ε = sqrt(1+x²) − 1 and b = a ε, the identity
//! sin²u − sin²v = sin(u+v) sin(u−v) gives
//!
//! ```text
//! δP = −sin(2a + b) sin b + x²/(1+x²) · sin²(a + b)
//! ```
//!
//! which has no cancellation. Phases are carried as cycle counts c = ωt/2π
//! and reduced exactly before taking sines; at c = N (completed cycles)
//! the resonant term vanishes identically and δP = −P_e(Δ), whose magnitude
//! is (NπΔ²/2ω²)² to leading order.
//!
//! The sign convention is that of δP above: at completed cycles the exact
//! deviation is negative, while the approximate forms are magnitudes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants;
use crate::distortion::Strain;
use crate::transitions::{transition_detuning, TransitionSpec};
use crate::{Error, Result};

/// Below this |Δ|/ω the square root and prefactor are replaced by their
/// Taylor expansions in x².
pub const CANCELLATION_THRESHOLD: f64 = 1e-6;

/// Validity limit of the small-detuning form; beyond it results are flagged.
pub const SMALL_DETUNING_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Abscissa {
    /// Times in seconds.
    Times(Vec<f64>),
    /// Completed cycles N = 1..=count, t = 2πN/ω.
    Cycles(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RabiConfig {
    /// Rabi frequency, rad/s.
    pub omega: f64,
    /// Detuning, rad/s.
    pub detuning: f64,
    pub abscissa: Abscissa,
}

impl RabiConfig {
    pub fn new(omega: f64, detuning: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::Domain(format!("Rabi frequency must be positive, got {omega}")));
        }
        if !detuning.is_finite() {
            return Err(Error::Domain(format!("detuning must be finite, got {detuning}")));
        }
        Ok(Self { omega, detuning, abscissa: Abscissa::Cycles(0) })
    }

    pub fn with_times(mut self, times: Vec<f64>) -> Result<Self> {
        if let Some(t) = times.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(Error::Domain(format!("times must be finite and >= 0, got {t}")));
        }
        self.abscissa = Abscissa::Times(times);
        Ok(self)
    }

    pub fn with_cycles(mut self, count: u64) -> Self {
        self.abscissa = Abscissa::Cycles(count);
        self
    }

    /// Δ/ω.
    pub fn ratio(&self) -> f64 {
        self.detuning / self.omega
    }

    /// ωt/2π.
    pub fn cycles_at(&self, t: f64) -> f64 {
        self.omega * t / (2.0 * PI)
    }

    /// t = 2πN/ω.
    pub fn time_of_cycles(&self, cycles: f64) -> f64 {
        2.0 * PI * cycles / self.omega
    }
}

/// sin(π·c + extra) with c reduced modulo 2 first.
#[inline]
fn sin_pi_plus(c: f64, extra: f64) -> f64 {
    let r = c - 2.0 * (c / 2.0).floor();
    (PI * r + extra).sin()
}

/// (ε, x²/(1+x²), 1/(1+x²)) for x = Δ/ω.
#[inline]
fn detuning_terms(x: f64) -> (f64, f64, f64) {
    let x2 = x * x;
    if x.abs() < CANCELLATION_THRESHOLD {
        let x4 = x2 * x2;
        (0.5 * x2 - 0.125 * x4, x2 - x4, 1.0 - x2 + x4)
    } else {
        let root = (1.0 + x2).sqrt();
        (x2 / (1.0 + root), x2 / (1.0 + x2), 1.0 / (1.0 + x2))
    }
}

fn excited_probability_cycles(cfg: &RabiConfig, c: f64) -> f64 {
    let (eps, _, p) = detuning_terms(cfg.ratio());
    let s = sin_pi_plus(c, PI * c * eps);
    p * s * s
}

/// P_e(Δ, t).
pub fn excited_probability(cfg: &RabiConfig, t: f64) -> f64 {
    excited_probability_cycles(cfg, cfg.cycles_at(t))
}

/// Exact δP at a phase given in cycles c = ωt/2π.
pub fn deviation_exact_cycles(cfg: &RabiConfig, c: f64) -> f64 {
    let x = cfg.ratio();
    let (eps, x2p, _) = detuning_terms(x);
    let b = PI * c * eps;
    let frac = c - c.floor();
    let cross = -(2.0 * PI * frac + b).sin() * b.sin();
    let s = sin_pi_plus(c, b);
    cross + x2p * s * s
}

/// Exact δP = P_e(0, t) − P_e(Δ, t), cancellation-safe.
pub fn deviation_exact(cfg: &RabiConfig, t: f64) -> f64 {
    deviation_exact_cycles(cfg, cfg.cycles_at(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmallDetuning {
    pub value: f64,
    /// |Δ| > 0.1 ω: outside the regime the approximation assumes.
    pub out_of_regime: bool,
}

fn small_detuning_cycles(cfg: &RabiConfig, c: f64) -> SmallDetuning {
    let x = cfg.ratio();
    let (_, x2p, p) = detuning_terms(x);
    let s = sin_pi_plus(c, 0.0);
    let y = 0.5 * PI * c * x * x; // Δ²t/4ω
    let sy = y.sin();
    SmallDetuning {
        value: s * s * (x2p + p * sy * sy),
        out_of_regime: x.abs() > SMALL_DETUNING_LIMIT,
    }
}

/// δP ≈ sin²(ωt/2) [1 − ω²/(Δ²+ω²) cos²(Δ²t/4ω)].
pub fn deviation_small_detuning(cfg: &RabiConfig, t: f64) -> SmallDetuning {
    small_detuning_cycles(cfg, cfg.cycles_at(t))
}

/// δP ≈ (Δ²t/4ω)².
pub fn deviation_short_time(cfg: &RabiConfig, t: f64) -> f64 {
    let v = cfg.detuning * cfg.detuning * t / (4.0 * cfg.omega);
    v * v
}

/// δP at N completed cycles ≈ (NπΔ²/2ω²)².
pub fn deviation_at_cycles(cfg: &RabiConfig, n_cycles: f64) -> f64 {
    let x = cfg.ratio();
    let v = n_cycles * PI * x * x / 2.0;
    v * v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    ShortTime,
    LongTime,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::ShortTime => "short_time",
            Regime::LongTime => "long_time",
        })
    }
}

/// short_time while t < πω/Δ², i.e. c < 1/(2x²).
fn regime_cycles(cfg: &RabiConfig, c: f64) -> Regime {
    let x = cfg.ratio();
    if x == 0.0 || c < 1.0 / (2.0 * x * x) {
        Regime::ShortTime
    } else {
        Regime::LongTime
    }
}

pub fn regime(cfg: &RabiConfig, t: f64) -> Regime {
    regime_cycles(cfg, cfg.cycles_at(t))
}

/// δP in every form over an abscissa.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationSeries {
    /// "t" (seconds) or "N" (completed cycles).
    pub abscissa_kind: String,
    pub abscissa: Vec<f64>,
    pub time: Vec<f64>,
    pub exact: Vec<f64>,
    pub small_detuning: Vec<f64>,
    pub short_time: Vec<f64>,
    pub completed_cycles: Vec<f64>,
    pub regime_flags: Vec<Regime>,
}

impl DeviationSeries {
    pub fn len(&self) -> usize {
        self.abscissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissa.is_empty()
    }
}

fn series_at_cycles(cfg: &RabiConfig, kind: &str, abscissa: Vec<f64>, cycles: Vec<f64>) -> DeviationSeries {
    let time = cycles.iter().map(|&c| cfg.time_of_cycles(c)).collect::<Vec<_>>();
    DeviationSeries {
        abscissa_kind: kind.to_string(),
        exact: cycles.iter().map(|&c| deviation_exact_cycles(cfg, c)).collect(),
        small_detuning: cycles.iter().map(|&c| small_detuning_cycles(cfg, c).value).collect(),
        short_time: time.iter().map(|&t| deviation_short_time(cfg, t)).collect(),
        completed_cycles: cycles.iter().map(|&c| deviation_at_cycles(cfg, c)).collect(),
        regime_flags: cycles.iter().map(|&c| regime_cycles(cfg, c)).collect(),
        abscissa,
        time,
    }
}

/// Evaluates every form over the configured abscissa.
pub fn deviation_series(cfg: &RabiConfig) -> DeviationSeries {
    match &cfg.abscissa {
        Abscissa::Times(ts) => {
            let cycles = ts.iter().map(|&t| cfg.cycles_at(t)).collect();
            series_at_cycles(cfg, "t", ts.clone(), cycles)
        }
        Abscissa::Cycles(n) => {
            let ns: Vec<f64> = (1..=*n).map(|k| k as f64).collect();
            series_at_cycles(cfg, "N", ns.clone(), ns)
        }
    }
}

/// Evaluates every form at the given completed-cycle counts.
pub fn deviation_series_at_cycles(cfg: &RabiConfig, cycles: &[u64]) -> DeviationSeries {
    let ns: Vec<f64> = cycles.iter().map(|&n| n as f64).collect();
    series_at_cycles(cfg, "N", ns.clone(), ns)
}

/// Inputs behind a figure series, emitted as metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Figure2Meta {
    pub transition: String,
    pub energy_model: String,
    pub strain: f64,
    pub omega_rad_per_s: f64,
    pub omega_cyclic_hz: f64,
    pub detuning_slope_hartree: f64,
    pub detuning_hartree: f64,
    pub detuning_rad_per_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Figure2 {
    pub meta: Figure2Meta,
    pub series: DeviationSeries,
}

/// Rabi config whose detuning is the strain-induced δ/ħ of a transition.
pub fn strain_rabi_config(transition: &TransitionSpec, strain: Strain, omega: f64) -> Result<(RabiConfig, Figure2Meta)> {
    let det = transition_detuning(transition, strain);
    let delta_hartree = det.at(strain);
    let delta = constants::hartree_to_rad_per_s(delta_hartree);
    let cfg = RabiConfig::new(omega, delta)?;
    let meta = Figure2Meta {
        transition: transition.label(),
        energy_model: transition.energy_model.clone(),
        strain: strain.value(),
        omega_rad_per_s: omega,
        omega_cyclic_hz: omega / (2.0 * PI),
        detuning_slope_hartree: det.slope,
        detuning_hartree: delta_hartree,
        detuning_rad_per_s: delta,
    };
    Ok((cfg, meta))
}

/// δP(N) for N = 1..=n_cycles_max under the strain-induced detuning.
pub fn figure2_series(transition: &TransitionSpec, strain: Strain, omega: f64, n_cycles_max: u64) -> Result<Figure2> {
    let (cfg, meta) = strain_rabi_config(transition, strain, omega)?;
    Ok(Figure2 { meta, series: deviation_series(&cfg.with_cycles(n_cycles_max)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(omega: f64, ratio: f64) -> RabiConfig {
        RabiConfig::new(omega, ratio * omega).unwrap()
    }

    #[test]
    fn resonant_pi_pulse() {
        let c = cfg(3.0, 0.0);
        assert!((excited_probability(&c, PI / 3.0) - 1.0).abs() < 1e-15);
        assert_eq!(excited_probability(&c, 0.0), 0.0);
    }

    #[test]
    fn detuned_half_population() {
        let c = cfg(1.0, 1.0);
        let t = PI / 2f64.sqrt();
        assert!((excited_probability(&c, t) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_detuning_zero_deviation() {
        let c = cfg(2.0, 0.0);
        for t in [0.0, 0.1, 1.0, 17.3, 1e6] {
            assert_eq!(deviation_exact(&c, t), 0.0);
            assert_eq!(deviation_small_detuning(&c, t).value, 0.0);
        }
    }

    #[test]
    fn matches_direct_difference_at_large_detuning() {
        let c = cfg(1.0, 0.3);
        for t in [0.3f64, 1.7, 5.0, 12.0] {
            let direct = (0.5 * t).sin().powi(2) - 1.0 / 1.09 * (1.09f64.sqrt() * t / 2.0).sin().powi(2);
            assert!((deviation_exact(&c, t) - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn threshold_sides_agree() {
        for c_ in [0.37, 3.1, 250.0, 1e5 + 0.25] {
            let below = cfg(1.0, CANCELLATION_THRESHOLD * (1.0 - 1e-9));
            let above = cfg(1.0, CANCELLATION_THRESHOLD * (1.0 + 1e-9));
            let a = deviation_exact_cycles(&below, c_);
            let b = deviation_exact_cycles(&above, c_);
            // the two ratios differ by 2e-9 relative; δP scales at most like x⁴
            assert!(((a - b) / b).abs() < 1e-8 + 1e-10, "c={c_}: {a} vs {b}");
            let same = cfg(1.0, CANCELLATION_THRESHOLD);
            let (e1, p1, q1) = detuning_terms(CANCELLATION_THRESHOLD * (1.0 - 1e-15));
            let (e2, p2, q2) = detuning_terms(same.ratio());
            assert!(((e1 - e2) / e2).abs() < 1e-10);
            assert!(((p1 - p2) / p2).abs() < 1e-10);
            assert!(((q1 - q2) / q2).abs() < 1e-10);
        }
    }

    #[test]
    fn completed_cycles_exact_is_negative_population() {
        let c = cfg(1.0, 1e-3);
        for n in [1u64, 10, 100] {
            let v = deviation_exact_cycles(&c, n as f64);
            assert!(v < 0.0);
            assert!((v + excited_probability_cycles(&c, n as f64)).abs() < 1e-20);
        }
    }

    #[test]
    fn short_time_is_quadratic() {
        let c = cfg(1.0, 1e-2);
        assert_eq!(deviation_short_time(&c, 0.0), 0.0);
        let a = deviation_short_time(&c, 3.0);
        let b = deviation_short_time(&c, 6.0);
        assert!((b / a - 4.0).abs() < 1e-14);
    }

    #[test]
    fn cycle_formula_shape() {
        let c = cfg(1.0, 1e-3);
        assert_eq!(deviation_at_cycles(&c, 0.0), 0.0);
        let a = deviation_at_cycles(&c, 10.0);
        let b = deviation_at_cycles(&c, 1000.0);
        assert!(((b / a).log10() / 2.0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn small_detuning_flag() {
        assert!(deviation_small_detuning(&cfg(1.0, 0.2), 1.0).out_of_regime);
        assert!(!deviation_small_detuning(&cfg(1.0, 0.05), 1.0).out_of_regime);
    }

    #[test]
    fn regimes() {
        let c = cfg(1.0, 1e-2);
        // boundary at t = πω/Δ² = π·1e4
        assert_eq!(regime(&c, 3.0e4), Regime::ShortTime);
        assert_eq!(regime(&c, 3.2e4), Regime::LongTime);
    }

    #[test]
    fn config_validation() {
        assert!(RabiConfig::new(0.0, 1.0).is_err());
        assert!(RabiConfig::new(1.0, f64::NAN).is_err());
        assert!(RabiConfig::new(1.0, 0.0).unwrap().with_times(vec![-1.0]).is_err());
    }

    #[test]
    fn cycles_series_layout() {
        let s = deviation_series(&cfg(1.0, 1e-4).with_cycles(5));
        assert_eq!(s.len(), 5);
        assert_eq!(s.abscissa, vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(s.completed_cycles.windows(2).all(|w| w[0] <= w[1]));
        assert!(deviation_series(&cfg(1.0, 1e-4).with_cycles(0)).is_empty());
    }
}

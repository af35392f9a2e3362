//! Verification suites behind `gravatom verify` and `gravatom claims`.
//!
//! Each suite returns [`CheckResult`] rows. Gated rows decide the exit
//! status; ungated rows are audits that are reported with their inputs but
//! never fail a run.

use std::f64::consts::PI;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants;
use crate::distortion::{
    closed_form_coefficients, laguerre_shift_identity_check, linear_response, numeric_decomposition,
    series_decomposition, theta_component, Strain, Truncation, THETA_K_MAX,
};
use crate::hydrogenics::{angular_overlap, radial_overlap, AtomicState};
use crate::output::{format_float, Table};
use crate::quadrature::QuadratureSpec;
use crate::rabi::{self, RabiConfig};
use crate::transitions::{transition_detuning, wavelength_shift, DefectTable, TransitionSpec};
use crate::{Error, Result};

/// Printed Θ_{k,l} table as (k, l, numerator, denominator).
pub const TABLE1_PRINTED: [(u32, u32, i64, i64); 10] = [
    (0, 0, 1, 1),
    (1, 0, -1, 3),
    (1, 2, 4, 15),
    (2, 0, 7, 15),
    (2, 2, -8, 105),
    (2, 4, 32, 315),
    (3, 0, -9, 15),
    (3, 2, 4, 21),
    (3, 4, -32, 1155),
    (3, 6, 128, 3003),
];

pub const TABLE1_TOLERANCE: f64 = 1e-12;
pub const BASIS_TOLERANCE: f64 = 1e-10;
pub const IDENTITY_TOLERANCE: f64 = 1e-8;
pub const IDENTITY_SEED: u64 = 11;
pub const IDENTITY_POINTS: usize = 100;
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-12;
pub const LINEARITY_STRAINS: [f64; 3] = [1e-3, 1e-4, 1e-5];
pub const LINEARITY_SPREAD: f64 = 0.01;
pub const GOLDEN_TOLERANCE: f64 = 1e-6;
pub const PARSEVAL_TOLERANCE: f64 = 1e-6;
pub const DETUNING_TOLERANCE: f64 = 1e-12;

/// Least-squares slope of C_{(n₀,2)} against S_p over [`LINEARITY_STRAINS`]
/// for an (n₀,0) source, frozen from the default quadrature.
pub const LINEARITY_GOLDEN: [(u32, f64); 3] =
    [(3, 2.649803940381176e-4), (5, 9.40586124949621e-4), (8, 2.575894735608365e-3)];

/// Rabi frequency of the figure configuration, cyclic Hz.
pub const FIGURE_OMEGA_HZ: f64 = 47e3;
pub const FIGURE_STRAIN: f64 = 1e-20;
pub const FIGURE_CYCLES: u64 = 1_000_000;

/// H110α line frequency and the level pair and strain assumed for it.
pub const H110_FREQUENCY_HZ: f64 = 4.8e9;
pub const H110_STRAIN: f64 = 1e-20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub check: String,
    pub value: f64,
    pub expected: f64,
    /// The quantity compared against `tolerance`.
    pub error: f64,
    pub tolerance: f64,
    pub gated: bool,
    pub passed: bool,
    pub note: String,
}

impl CheckResult {
    fn gated(suite: &str, check: impl Into<String>, value: f64, expected: f64, error: f64, tolerance: f64) -> Self {
        Self {
            suite: suite.into(),
            check: check.into(),
            value,
            expected,
            error,
            tolerance,
            gated: true,
            passed: error <= tolerance,
            note: String::new(),
        }
    }

    fn report(suite: &str, check: impl Into<String>, value: f64, expected: f64) -> Self {
        Self {
            suite: suite.into(),
            check: check.into(),
            value,
            expected,
            error: if expected != 0.0 { value / expected } else { f64::NAN },
            tolerance: f64::NAN,
            gated: false,
            passed: true,
            note: String::new(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn status(&self) -> &'static str {
        match (self.gated, self.passed) {
            (false, _) => "REPORT",
            (true, true) => "PASS",
            (true, false) => "FAIL",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.gated || c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.gated && !c.passed)
    }

    pub fn suite(&self, name: &str) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| c.suite == name).collect()
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&[
            ("suite", ""),
            ("check", ""),
            ("value", "1"),
            ("expected", "1"),
            ("error", "1"),
            ("tolerance", "1"),
            ("status", ""),
            ("note", ""),
        ]);
        let gated = self.checks.iter().filter(|c| c.gated).count();
        let failed = self.failures().count();
        t.meta("gated_checks", gated);
        t.meta("failed_checks", failed);
        t.meta("note", "error is the gated quantity; for REPORT rows it is value/expected");
        for c in &self.checks {
            t.push(vec![
                c.suite.clone().into(),
                c.check.clone().into(),
                c.value.into(),
                c.expected.into(),
                c.error.into(),
                c.tolerance.into(),
                c.status().into(),
                c.note.clone().into(),
            ]);
        }
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Table1,
    Parity,
    Basis,
    ClosedForm,
    Linearity,
    Parseval,
    Detuning,
    Rabi,
    Figure2,
    Claims,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 11] = [
        "table1",
        "parity",
        "basis",
        "closed-form",
        "linearity",
        "parseval",
        "detuning",
        "rabi",
        "figure2",
        "claims",
        "all",
    ];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "table1" => Suite::Table1,
            "parity" => Suite::Parity,
            "basis" => Suite::Basis,
            "closed-form" => Suite::ClosedForm,
            "linearity" => Suite::Linearity,
            "parseval" => Suite::Parseval,
            "detuning" => Suite::Detuning,
            "rabi" => Suite::Rabi,
            "figure2" => Suite::Figure2,
            "claims" => Suite::Claims,
            "all" => Suite::All,
            other => {
                return Err(Error::Config(format!("unknown suite `{other}` (one of {})", Suite::NAMES.join(", "))))
            }
        })
    }
}

pub fn run_suite(suite: Suite, quad: &QuadratureSpec) -> Result<Report> {
    let checks = match suite {
        Suite::Table1 => table1()?,
        Suite::Parity => parity()?,
        Suite::Basis => basis(quad)?,
        Suite::ClosedForm => closed_form()?,
        Suite::Linearity => linearity(quad)?,
        Suite::Parseval => parseval(quad)?,
        Suite::Detuning => detuning()?,
        Suite::Rabi => rabi_suite()?,
        Suite::Figure2 => figure2()?,
        Suite::Claims => claims()?,
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Table1,
                Suite::Parity,
                Suite::Basis,
                Suite::ClosedForm,
                Suite::Linearity,
                Suite::Parseval,
                Suite::Detuning,
                Suite::Rabi,
                Suite::Figure2,
                Suite::Claims,
            ] {
                all.extend(run_suite(s, quad)?.checks);
            }
            all
        }
    };
    Ok(Report { checks })
}

fn rel_err(value: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        value.abs()
    } else {
        ((value - expected) / expected).abs()
    }
}

/// The ten printed Θ_{k,l} values against the numeric evaluation.
pub fn table1() -> Result<Vec<CheckResult>> {
    TABLE1_PRINTED
        .iter()
        .map(|&(k, l, num, den)| {
            let value = theta_component(k, l)?;
            let expected = num as f64 / den as f64;
            Ok(CheckResult::gated(
                "table1",
                format!("theta(k={k},l={l}) = {num}/{den}"),
                value,
                expected,
                (value - expected).abs(),
                TABLE1_TOLERANCE,
            ))
        })
        .collect()
}

/// Θ_{k,l} is exactly zero for odd l.
pub fn parity() -> Result<Vec<CheckResult>> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for k in 0..=THETA_K_MAX {
        for l in (1..=2 * k + 1).step_by(2) {
            worst = worst.max(theta_component(k, l)?.abs());
            count += 1;
        }
    }
    Ok(vec![CheckResult::gated("parity", format!("theta odd l exact zero ({count} pairs, k<=12)"), worst, 0.0, worst, 0.0)])
}

/// Orthonormality of the basis and the Laguerre shift identity.
pub fn basis(quad: &QuadratureSpec) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for l in 0..=5u32 {
        let pairs: Vec<(u32, u32)> =
            ((l + 1)..=20).flat_map(|a| (a..=20).map(move |b| (a, b))).collect();
        let worst = pairs
            .par_iter()
            .map(|&(a, b)| {
                let v = radial_overlap(AtomicState::axial(a, l)?, AtomicState::axial(b, l)?, quad)?;
                Ok((v - if a == b { 1.0 } else { 0.0 }).abs())
            })
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        out.push(CheckResult::gated(
            "basis",
            format!("radial orthonormality l={l}, n<=20"),
            worst,
            0.0,
            worst,
            BASIS_TOLERANCE,
        ));
    }
    let mut worst = 0.0f64;
    for a in 0..=16u32 {
        for b in a..=16 {
            let v = angular_overlap(a, b, quad)?;
            worst = worst.max((v - if a == b { 1.0 } else { 0.0 }).abs());
        }
    }
    out.push(CheckResult::gated("basis", "Y_l0 orthonormality l<=16", worst, 0.0, worst, BASIS_TOLERANCE));

    let mut rng = ChaCha8Rng::seed_from_u64(IDENTITY_SEED);
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for _ in 0..IDENTITY_POINTS {
        let n0 = rng.random_range(1..=8u32);
        let a = rng.random_range(0.95..=1.05);
        let r = rng.random_range(0.0..=20.0);
        let (lhs, rhs) = laguerre_shift_identity_check(n0, a, r, 1e-17)?;
        let e = rel_err(rhs, lhs);
        if e > worst {
            worst = e;
            worst_at = format!("worst at n0={n0} A={a} r={r}");
        }
    }
    out.push(
        CheckResult::gated(
            "basis",
            format!("laguerre shift identity, {IDENTITY_POINTS} seeded points"),
            worst,
            0.0,
            worst,
            IDENTITY_TOLERANCE,
        )
        .with_note(worst_at),
    );
    Ok(out)
}

/// k_max = 1 series against the closed-form pair for s-state sources.
pub fn closed_form() -> Result<Vec<CheckResult>> {
    let strain = Strain::new(1e-3)?;
    let mut out = Vec::new();
    for n0 in 3..=8u32 {
        let source = AtomicState::axial(n0, 0)?;
        let series = series_decomposition(source, strain, 1)?;
        let cf = closed_form_coefficients(source)?;
        let mut worst = 0.0f64;
        for (state, c) in cf.targets() {
            let want = c.at(strain);
            let got = series.coefficient(state).unwrap_or(0.0);
            worst = worst.max(rel_err(got, want));
        }
        let extra = series.entries.len() != cf.targets().len();
        out.push(
            CheckResult::gated(
                "closed-form",
                format!("series k_max=1 vs closed form, n0={n0}, S_p=1e-3"),
                worst,
                0.0,
                if extra { f64::INFINITY } else { worst },
                CLOSED_FORM_TOLERANCE,
            )
            .with_note(format!("{} series entries", series.entries.len())),
        );
    }
    Ok(out)
}

/// Least-squares slope through the origin.
pub fn slope_through_origin(points: &[(f64, f64)]) -> f64 {
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    sxy / sxx
}

/// Strain response of the same-n, l = 2 overlap for s-state sources.
pub fn linearity(quad: &QuadratureSpec) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (n0, golden) in LINEARITY_GOLDEN {
        let source = AtomicState::axial(n0, 0)?;
        let target = AtomicState::axial(n0, 2)?;
        let rep = linear_response(target, source, &LINEARITY_STRAINS, quad)?;
        let ratios: Vec<String> = rep.ratios.iter().map(|(s, r)| format!("C/S({s:e})={}", format_float(*r))).collect();
        out.push(
            CheckResult::gated(
                "linearity",
                format!("C/S_p constant across strains, ({n0},2)<-({n0},0)"),
                rep.relative_spread,
                0.0,
                rep.relative_spread,
                LINEARITY_SPREAD,
            )
            .with_note(ratios.join(" ")),
        );
        let points: Vec<(f64, f64)> = rep.ratios.iter().map(|&(s, r)| (s, r * s)).collect();
        let fit = slope_through_origin(&points);
        out.push(CheckResult::gated(
            "linearity",
            format!("fitted slope golden, n0={n0}"),
            fit,
            golden,
            rel_err(fit, golden),
            GOLDEN_TOLERANCE,
        ));
        let cf = closed_form_coefficients(source)?.c_plus2.slope();
        out.push(
            CheckResult::report("linearity", format!("fitted slope / closed-form C2 slope, n0={n0}"), fit, cf)
                .with_note("audit of the first-order closed form against quadrature"),
        );
    }
    Ok(out)
}

/// Σ C² against ∫|ψ′|² for a 4s source.
pub fn parseval(quad: &QuadratureSpec) -> Result<Vec<CheckResult>> {
    let d = numeric_decomposition(AtomicState::axial(4, 0)?, Strain::new(1e-3)?, quad, Truncation::default())?;
    let direct = d.direct_norm.unwrap_or(f64::NAN);
    let gap = d.parseval_gap().unwrap_or(f64::INFINITY);
    Ok(vec![CheckResult::gated(
        "parseval",
        "n0=4 S_p=1e-3 dn=4 l<=10: |sum C^2 - direct norm|",
        d.norm_sum,
        direct,
        gap,
        PARSEVAL_TOLERANCE,
    )
    .with_note(format!("{} basis states", d.entries.len()))])
}

/// 1S-2P hydrogen detuning slope and linearity in S_p.
pub fn detuning() -> Result<Vec<CheckResult>> {
    let h = DefectTable::hydrogen();
    let t = TransitionSpec::new(AtomicState::axial(1, 0)?, AtomicState::axial(2, 1)?, &h)?;
    let det = transition_detuning(&t, Strain::zero());
    // −2[E₂·4³/(1·5) − E₁·2³/((−1)·3)] with E₁ = −1/2, E₂ = −1/8
    let expected = 88.0 / 15.0;
    let mut out = vec![CheckResult::gated(
        "detuning",
        "1S-2P hydrogen slope = 88/15 Ha",
        det.slope,
        expected,
        rel_err(det.slope, expected),
        DETUNING_TOLERANCE,
    )];
    let mut worst = 0.0f64;
    for s in [1e-20, 3e-20, 1e-10, 2.5e-4] {
        let d = transition_detuning(&t, Strain::new(s)?).at_strain.unwrap_or(f64::NAN);
        worst = worst.max(rel_err(d / s, det.slope));
    }
    out.push(CheckResult::gated("detuning", "delta/S_p constant across strains", worst, 0.0, worst, 4.0 * f64::EPSILON));
    let zero = transition_detuning(&t, Strain::zero()).at_strain.unwrap_or(f64::NAN);
    out.push(CheckResult::gated("detuning", "strain 0 gives delta 0", zero, 0.0, zero.abs(), 0.0));
    Ok(out)
}

/// Maximum |exact − small-detuning| over t ∈ (0, 10/ω] for each Δ/ω and the
/// log-log slope of that error against Δ/ω.
pub fn approximation_hierarchy(ratios: &[f64], samples: usize) -> Result<(Vec<f64>, f64)> {
    let mut errs = Vec::with_capacity(ratios.len());
    for &x in ratios {
        let cfg = RabiConfig::new(1.0, x)?;
        let worst = (1..=samples)
            .map(|i| {
                let t = 10.0 * i as f64 / samples as f64;
                (rabi::deviation_exact(&cfg, t) - rabi::deviation_small_detuning(&cfg, t).value).abs()
            })
            .fold(0.0, f64::max);
        errs.push(worst);
    }
    let pts: Vec<(f64, f64)> = ratios.iter().zip(&errs).map(|(x, e)| (x.log10(), e.log10())).collect();
    Ok((errs, fit_slope(&pts)))
}

/// Ordinary least-squares slope.
pub fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Largest relative gap between the completed-cycle formula and the exact
/// deviation over every N where the formula is at most 0.01.
pub fn cycle_consistency(x: f64) -> Result<(f64, u64)> {
    let cfg = RabiConfig::new(1.0, x)?;
    let mut worst = 0.0f64;
    let mut n = 1u64;
    loop {
        let approx = rabi::deviation_at_cycles(&cfg, n as f64);
        if approx > 0.01 {
            break;
        }
        let exact = rabi::deviation_exact_cycles(&cfg, n as f64).abs();
        worst = worst.max((approx - exact).abs() / approx.max(1e-300));
        n += 1;
    }
    Ok((worst, n - 1))
}

/// Rabi-module invariants and worked values.
pub fn rabi_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let suite = "rabi";

    let mut rng = ChaCha8Rng::seed_from_u64(IDENTITY_SEED);
    let mut violations = 0u32;
    for _ in 0..20_000 {
        let omega = 10f64.powf(rng.random_range(0.0..9.0));
        let x = 10f64.powf(rng.random_range(-12.0..0.0)) * if rng.random::<bool>() { 1.0 } else { -1.0 };
        let t = 10f64.powf(rng.random_range(-3.0..7.0)) / omega;
        let cfg = RabiConfig::new(omega, x * omega)?;
        let p = rabi::excited_probability(&cfg, t);
        let d = rabi::deviation_exact(&cfg, t);
        if !(0.0..=1.0).contains(&p) || !(-1.0..=1.0).contains(&d) {
            violations += 1;
        }
    }
    out.push(CheckResult::gated(suite, "0 <= P_e <= 1 and |deltaP| <= 1, 20000 seeded points", violations as f64, 0.0, violations as f64, 0.0));

    let cfg0 = RabiConfig::new(2.0, 0.0)?;
    let worst0 = [0.0, 0.3, 1.0, 17.0, 1e3, 1e9].iter().map(|&t| rabi::deviation_exact(&cfg0, t).abs()).fold(0.0, f64::max);
    out.push(CheckResult::gated(suite, "deltaP exactly 0 at zero detuning", worst0, 0.0, worst0, 0.0));

    let (errs, slope) = approximation_hierarchy(&[1e-2, 1e-3, 1e-4], 2000)?;
    out.push(
        CheckResult::gated(suite, "small-detuning error slope vs Delta/omega >= 3.5, t <= 10/omega", slope, 3.5, (3.5 - slope).max(0.0), 0.0)
            .with_note(format!("max errors {:e} {:e} {:e}", errs[0], errs[1], errs[2])),
    );

    let (worst, n_max) = cycle_consistency(1e-3)?;
    out.push(
        CheckResult::gated(suite, "completed-cycle formula vs exact, Delta/omega=1e-3", worst, 0.0, worst, 0.01)
            .with_note(format!("N = 1..={n_max}")),
    );

    let tiny = RabiConfig::new(1.0, 1e-12)?;
    let exact = rabi::deviation_exact_cycles(&tiny, 1e6);
    let formula = rabi::deviation_at_cycles(&tiny, 1e6);
    let e = if exact.is_finite() && exact != 0.0 { rel_err(exact.abs(), formula) } else { f64::INFINITY };
    out.push(
        CheckResult::gated(suite, "cancellation safety Delta/omega=1e-12 N=1e6", exact, formula, e, 0.01)
            .with_note("exact deltaP is -P_e at completed cycles; magnitudes compared"),
    );

    let thr = rabi::CANCELLATION_THRESHOLD;
    let mut worst = 0.0f64;
    for c in [0.37, 1.0, 3.1, 250.0, 1e5 + 0.25] {
        let a = rabi::deviation_exact_cycles(&RabiConfig::new(1.0, thr * (1.0 - 1e-12))?, c);
        let b = rabi::deviation_exact_cycles(&RabiConfig::new(1.0, thr * (1.0 + 1e-12))?, c);
        // the inputs differ by 2e-12 relative, δP scales at most as x⁴
        worst = worst.max(rel_err(a, b));
    }
    out.push(CheckResult::gated(suite, "both sides of the cancellation threshold agree", worst, 0.0, worst, 1e-10));

    // 50-digit evaluation of sin²(π) − sin²(π·sqrt(1.01))/1.01
    let oracle = -2.4306334139097539553965623474440220556e-4;
    let v = rabi::deviation_exact(&RabiConfig::new(1.0, 0.1)?, 2.0 * PI);
    out.push(CheckResult::gated(suite, "Delta=0.1 omega, t=2pi/omega vs extended precision", v, oracle, rel_err(v, oracle), 1e-12));

    let c9 = RabiConfig::new(1.0, 1e-9)?;
    let v = rabi::deviation_exact(&c9, 2.0 * PI * 1e6);
    let f = rabi::deviation_at_cycles(&c9, 1e6);
    out.push(CheckResult::gated(suite, "Delta=1e-9 omega, t=2pi 1e6/omega vs completed-cycle formula", v.abs(), f, rel_err(v.abs(), f), 0.01));

    let c2 = RabiConfig::new(1.0, 1e-2)?;
    let a = rabi::deviation_exact(&c2, PI);
    let b = rabi::deviation_small_detuning(&c2, PI).value;
    out.push(CheckResult::gated(suite, "Delta=0.01 omega, t=pi/omega small-detuning within x^4", b, a, (a - b).abs(), 1e-8));

    let c3 = RabiConfig::new(1.0, 1e-3)?;
    let a = rabi::deviation_exact(&c3, 10.0);
    let b = rabi::deviation_short_time(&c3, 10.0);
    out.push(
        CheckResult::gated(suite, "Delta=1e-3 omega, t=10/omega short-time within 5%", b, a, rel_err(b, a), 0.05)
            .with_note("short-time form omits the first-order sin(omega t) term"),
    );

    let a = rabi::deviation_exact_cycles(&c3, 100.0).abs();
    let b = rabi::deviation_at_cycles(&c3, 100.0);
    out.push(CheckResult::gated(suite, "Delta=1e-3 omega, N=100 completed-cycle within 1%", b, a, rel_err(b, a), 0.01));
    Ok(out)
}

fn figure_transition(defects: &DefectTable) -> Result<TransitionSpec> {
    TransitionSpec::new(AtomicState::axial(50, 0)?, AtomicState::axial(51, 1)?, defects)
}

/// Shape of the 50S-51P completed-cycle series.
pub fn figure2() -> Result<Vec<CheckResult>> {
    let t = figure_transition(&DefectTable::rb_example())?;
    let omega = constants::hz_to_rad_per_s(FIGURE_OMEGA_HZ);
    let fig = rabi::figure2_series(&t, Strain::new(FIGURE_STRAIN)?, omega, FIGURE_CYCLES)?;
    let s = &fig.series;
    let pts: Vec<(f64, f64)> = s
        .abscissa
        .iter()
        .zip(&s.completed_cycles)
        .filter(|(_, v)| **v > 0.0)
        .map(|(n, v)| (n.log10(), v.log10()))
        .collect();
    let slope = fit_slope(&pts);
    let monotone = s.completed_cycles.windows(2).all(|w| w[1] >= w[0]);
    let zero = rabi::figure2_series(&t, Strain::zero(), omega, 100)?;
    let zero_max = zero.series.completed_cycles.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(vec![
        CheckResult::gated("figure2", "log-log slope of deltaP vs N, 50S-51P", slope, 2.0, (slope - 2.0).abs(), 1e-3)
            .with_note(format!("N = 1..={FIGURE_CYCLES}, rb-example defects, omega/2pi = 47 kHz, S_p = 1e-20")),
        CheckResult::gated("figure2", "deltaP nondecreasing in N", if monotone { 1.0 } else { 0.0 }, 1.0, if monotone { 0.0 } else { 1.0 }, 0.0),
        CheckResult::gated("figure2", "S_p = 0 gives an all-zero series", zero_max, 0.0, zero_max, 0.0),
        CheckResult::report("figure2", "deltaP at N = 1e6 (absolute scale)", s.completed_cycles.last().copied().unwrap_or(f64::NAN), f64::NAN)
            .with_note(format!("Delta = {} rad/s", format_float(fig.meta.detuning_rad_per_s))),
    ])
}

/// Magnitude statements computed under explicit assumptions. Never gated.
pub fn claims() -> Result<Vec<CheckResult>> {
    let h = DefectTable::hydrogen();
    let rb = DefectTable::rb_example();
    let ground = TransitionSpec::new(AtomicState::axial(1, 0)?, AtomicState::axial(2, 1)?, &h)?;
    let ryd_h = figure_transition(&h)?;
    let ryd_rb = figure_transition(&rb)?;
    let s0 = transition_detuning(&ground, Strain::zero()).slope;
    let sh = transition_detuning(&ryd_h, Strain::zero()).slope;
    let srb = transition_detuning(&ryd_rb, Strain::zero()).slope;

    let mut out = vec![
        CheckResult::report("claims", "detuning enhancement |delta(50S-51P)|/|delta(1S-2P)|, hydrogenic", (sh / s0).abs(), 1e5)
            .with_note("both transitions hydrogenic"),
        CheckResult::report("claims", "detuning enhancement |delta(50S-51P)|/|delta(1S-2P)|, rb-example 50S-51P", (srb / s0).abs(), 1e5)
            .with_note("1S-2P hydrogenic: n=1 is below the rb-example s defect"),
    ];

    // δP ∝ Δ⁴ at equal ω and N, so the deviation ratio is the detuning ratio to the fourth power
    let omega = constants::hz_to_rad_per_s(FIGURE_OMEGA_HZ);
    let strain = Strain::new(FIGURE_STRAIN)?;
    let dev = |t: &TransitionSpec| -> Result<f64> {
        let (cfg, _) = rabi::strain_rabi_config(t, strain, omega)?;
        Ok(rabi::deviation_at_cycles(&cfg, 1.0))
    };
    let d0 = dev(&ground)?;
    out.push(
        CheckResult::report("claims", "Rabi deviation ratio deltaP(50S-51P)/deltaP(1S-2P), hydrogenic", dev(&ryd_h)? / d0, 1e4)
            .with_note("same omega/2pi = 47 kHz, S_p = 1e-20, N = 1"),
    );
    out.push(
        CheckResult::report("claims", "Rabi deviation ratio deltaP(50S-51P)/deltaP(1S-2P), rb-example", dev(&ryd_rb)? / d0, 1e4)
            .with_note("same omega/2pi = 47 kHz, S_p = 1e-20, N = 1"),
    );

    let h110 = TransitionSpec::new(AtomicState::axial(109, 0)?, AtomicState::axial(110, 1)?, &h)?;
    let det = transition_detuning(&h110, Strain::zero());
    let dl = wavelength_shift(H110_FREQUENCY_HZ, &det, Strain::new(H110_STRAIN)?)?;
    out.push(
        CheckResult::report("claims", "H110alpha wavelength shift (m)", dl.abs(), 5.6e-16)
            .with_note("assumes 109s-110p hydrogenic, S_p = 1e-20, nu = 4.8 GHz"),
    );

    let fig = rabi::figure2_series(&ryd_rb, strain, omega, 1)?;
    out.push(
        CheckResult::report("claims", "figure scale: deltaP at N = 1", fig.series.completed_cycles[0], f64::NAN)
            .with_note("rb-example 50S-51P, omega/2pi = 47 kHz, S_p = 1e-20"),
    );
    Ok(out)
}

//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Tolerances and frozen values are pinned here rather than imported from
//! the library, so a change on either side shows up as a failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gravatom::distortion::{
    closed_form_coefficients, laguerre_shift_identity_check, linear_response, numeric_decomposition,
    series_decomposition, theta_component, Strain, Truncation,
};
use gravatom::hydrogenics::{angular_overlap, radial_overlap};
use gravatom::quadrature::QuadratureSpec;
use gravatom::rabi::{self, RabiConfig};
use gravatom::transitions::{transition_detuning, DefectTable, TransitionSpec};
use gravatom::verify::{self, Suite};
use gravatom::AtomicState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE1: [(u32, u32, f64); 10] = [
    (0, 0, 1.0),
    (1, 0, -1.0 / 3.0),
    (1, 2, 4.0 / 15.0),
    (2, 0, 7.0 / 15.0),
    (2, 2, -8.0 / 105.0),
    (2, 4, 32.0 / 315.0),
    (3, 0, -9.0 / 15.0),
    (3, 2, 4.0 / 21.0),
    (3, 4, -32.0 / 1155.0),
    (3, 6, 128.0 / 3003.0),
];
const TABLE1_ABS: f64 = 1e-12;
const TABLE1_BUDGET: Duration = Duration::from_secs(1);

const ORTHO_ABS: f64 = 1e-10;
const IDENTITY_REL: f64 = 1e-8;
const IDENTITY_SEED: u64 = 2024;
const BASIS_BUDGET: Duration = Duration::from_secs(30);

const SERIES_REL: f64 = 1e-12;

const LINEARITY_SPREAD: f64 = 0.01;
const GOLDEN_REL: f64 = 1e-6;
const GOLDEN: [(u32, f64); 3] = [(3, 2.649803940381176e-4), (5, 9.40586124949621e-4), (8, 2.575894735608365e-3)];

const PARSEVAL_ABS: f64 = 1e-6;
const PARSEVAL_BUDGET: Duration = Duration::from_secs(60);

const DETUNING_REL: f64 = 1e-12;

const RABI_BUDGET: Duration = Duration::from_secs(10);
const HIERARCHY_MIN_SLOPE: f64 = 3.5;
const CYCLE_REL: f64 = 0.01;

const FIGURE_SLOPE_ABS: f64 = 1e-3;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn s(n: u32, l: u32) -> AtomicState {
    AtomicState::axial(n, l).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let report = verify::run_suite(Suite::Table1, &QuadratureSpec::default()).unwrap();
    let mut bad = Vec::new();
    for ((k, l, want), row) in TABLE1.iter().zip(&report.checks) {
        let got = row.value;
        if (got - want).abs() > TABLE1_ABS {
            bad.push(format!("theta({k},{l})={got} printed {want}"));
        }
    }
    let mut odd_nonzero = 0;
    for k in 0..=3 {
        for l in (1..=2 * k + 1).step_by(2) {
            if theta_component(k, l).unwrap() != 0.0 {
                odd_nonzero += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = report.checks.len() == 10 && bad.is_empty() && odd_nonzero == 0 && elapsed < TABLE1_BUDGET;
    outcome(ok, format!("mismatches: [{}]; odd-l nonzero: {odd_nonzero}", bad.join("; ")))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let q = QuadratureSpec::default();
    let mut radial_worst = 0.0f64;
    for l in 0..=5 {
        for a in (l + 1)..=20 {
            for b in a..=20 {
                let v = radial_overlap(s(a, l), s(b, l), &q).unwrap();
                radial_worst = radial_worst.max((v - if a == b { 1.0 } else { 0.0 }).abs());
            }
        }
    }
    let mut ang_worst = 0.0f64;
    for a in 0..=16 {
        for b in 0..=16 {
            let v = angular_overlap(a, b, &q).unwrap();
            ang_worst = ang_worst.max((v - if a == b { 1.0 } else { 0.0 }).abs());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(IDENTITY_SEED);
    let mut id_worst = 0.0f64;
    for _ in 0..100 {
        let n0 = rng.random_range(1..=8u32);
        let a = rng.random_range(0.95..=1.05);
        let r = rng.random_range(0.0..=20.0);
        let (lhs, rhs) = laguerre_shift_identity_check(n0, a, r, 1e-17).unwrap();
        id_worst = id_worst.max(rel(rhs, lhs));
    }
    let elapsed = start.elapsed();
    let ok = radial_worst <= ORTHO_ABS && ang_worst <= ORTHO_ABS && id_worst <= IDENTITY_REL && elapsed < BASIS_BUDGET;
    outcome(ok, format!("radial {radial_worst:e}, Y {ang_worst:e}, identity rel {id_worst:e}"))
}

fn criterion_3() -> Outcome {
    let strain = Strain::new(1e-3).unwrap();
    let mut worst = 0.0f64;
    let mut shape_ok = true;
    for n0 in 3..=8 {
        let series = series_decomposition(s(n0, 0), strain, 1).unwrap();
        let cf = closed_form_coefficients(s(n0, 0)).unwrap();
        shape_ok &= series.entries.len() == 2;
        for (state, c) in cf.targets() {
            let got = series.coefficient(state).unwrap_or(f64::NAN);
            worst = worst.max(rel(got, c.at(strain)));
        }
    }
    outcome(worst <= SERIES_REL && shape_ok, format!("max relative difference {worst:e}"))
}

fn criterion_4() -> Outcome {
    let q = QuadratureSpec::default();
    let strains = [1e-3, 1e-4, 1e-5];
    let mut ok = true;
    let mut parts = Vec::new();
    for (n0, golden) in GOLDEN {
        let rep = linear_response(s(n0, 2), s(n0, 0), &strains, &q).unwrap();
        let sxy: f64 = rep.ratios.iter().map(|(s, r)| s * (r * s)).sum();
        let sxx: f64 = rep.ratios.iter().map(|(s, _)| s * s).sum();
        let fit = sxy / sxx;
        let cf = closed_form_coefficients(s(n0, 0)).unwrap().c_plus2.slope();
        let linear = rep.relative_spread <= LINEARITY_SPREAD;
        let frozen = rel(fit, golden) <= GOLDEN_REL;
        ok &= linear && frozen;
        parts.push(format!(
            "n0={n0}: spread {:.4} golden rel {:e} slope/closed-form {:.3e}",
            rep.relative_spread,
            rel(fit, golden),
            fit / cf
        ));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let d = numeric_decomposition(s(4, 0), Strain::new(1e-3).unwrap(), &QuadratureSpec::default(), Truncation { delta_n: 4, l_max: 10 })
        .unwrap();
    let gap = (d.norm_sum - d.direct_norm.unwrap()).abs();
    let elapsed = start.elapsed();
    outcome(gap <= PARSEVAL_ABS && elapsed < PARSEVAL_BUDGET, format!("gap {gap:e} over {} states", d.entries.len()))
}

fn criterion_6() -> Outcome {
    let h = DefectTable::hydrogen();
    let t = TransitionSpec::new(s(1, 0), s(2, 1), &h).unwrap();
    let slope = transition_detuning(&t, Strain::zero()).slope;
    // E_n = −1/(2n²); shift factor (n+l+1)³/((2l−1)(2l+3))
    let e1 = -1.0 / 2.0;
    let e2 = -1.0 / 8.0;
    let f1 = 8.0 / ((-1.0) * 3.0);
    let f2 = 64.0 / (1.0 * 5.0);
    let want = -2.0 * (e2 * f2 - e1 * f1);
    let a = transition_detuning(&t, Strain::new(1e-20).unwrap()).at_strain.unwrap();
    let b = transition_detuning(&t, Strain::new(2e-20).unwrap()).at_strain.unwrap();
    let c = transition_detuning(&t, Strain::new(7e-4).unwrap()).at_strain.unwrap();
    let linear = b == 2.0 * a && c == slope * 7e-4 && a == slope * 1e-20;
    outcome(rel(slope, want) <= DETUNING_REL && linear, format!("slope {slope} vs {want}, exact scaling {linear}"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;

    let mut rng = ChaCha8Rng::seed_from_u64(IDENTITY_SEED);
    let mut out_of_range = 0;
    for _ in 0..20_000 {
        let omega = 10f64.powf(rng.random_range(-1.0..8.0));
        let x = 10f64.powf(rng.random_range(-12.0..0.0));
        let t = 10f64.powf(rng.random_range(-2.0..6.0)) / omega;
        let cfg = RabiConfig::new(omega, x * omega).unwrap();
        let p = rabi::excited_probability(&cfg, t);
        let d = rabi::deviation_exact(&cfg, t);
        if !(0.0..=1.0).contains(&p) || !(-1.0..=1.0).contains(&d) {
            out_of_range += 1;
        }
    }
    ok &= out_of_range == 0;
    notes.push(format!("bounds violations {out_of_range}"));

    let zero = RabiConfig::new(3.0, 0.0).unwrap();
    let z = [0.0, 0.5, 2.0, 1e4, 1e8].iter().all(|&t| rabi::deviation_exact(&zero, t) == 0.0);
    ok &= z;
    notes.push(format!("zero detuning exact {z}"));

    let mut pts = Vec::new();
    for x in [1e-2, 1e-3, 1e-4] {
        let cfg = RabiConfig::new(1.0, x).unwrap();
        let worst = (1..=4000)
            .map(|i| {
                let t = 10.0 * i as f64 / 4000.0;
                (rabi::deviation_exact(&cfg, t) - rabi::deviation_small_detuning(&cfg, t).value).abs()
            })
            .fold(0.0, f64::max);
        pts.push((x.log10(), worst.log10()));
    }
    let hierarchy = fit_slope(&pts);
    ok &= hierarchy >= HIERARCHY_MIN_SLOPE;
    notes.push(format!("hierarchy slope {hierarchy:.4} (need >= {HIERARCHY_MIN_SLOPE})"));

    let cfg = RabiConfig::new(1.0, 1e-3).unwrap();
    let mut worst = 0.0f64;
    for n in 1..=70_000u64 {
        let approx = (n as f64 * PI * 1e-6 / 2.0).powi(2);
        if approx > 0.01 {
            break;
        }
        let exact = rabi::deviation_exact(&cfg, 2.0 * PI * n as f64).abs();
        worst = worst.max((approx - exact).abs() / approx.max(1e-300));
    }
    ok &= worst <= CYCLE_REL;
    notes.push(format!("cycle consistency {worst:.2e}"));

    let tiny = RabiConfig::new(1.0, 1e-12).unwrap();
    let v = rabi::deviation_exact_cycles(&tiny, 1e6);
    let want = (1e6 * PI * 1e-24 / 2.0f64).powi(2);
    let safe = v.is_finite() && v != 0.0 && rel(v.abs(), want) <= CYCLE_REL;
    ok &= safe;
    notes.push(format!("cancellation {v:e} vs {want:e}"));

    let elapsed = start.elapsed();
    ok &= elapsed < RABI_BUDGET;
    outcome(ok, notes.join("; "))
}

fn criterion_8() -> Outcome {
    let rb = DefectTable::rb_example();
    let t = TransitionSpec::new(s(50, 0), s(51, 1), &rb).unwrap();
    let omega = 2.0 * PI * 47e3;
    let fig = rabi::figure2_series(&t, Strain::new(1e-20).unwrap(), omega, 1_000_000).unwrap();
    let y = &fig.series.completed_cycles;
    let stride = 997;
    let pts: Vec<(f64, f64)> = (0..y.len()).step_by(stride).map(|i| (((i + 1) as f64).log10(), y[i].log10())).collect();
    let slope = fit_slope(&pts);
    let monotone = y.windows(2).all(|w| w[1] >= w[0]);
    let claims = verify::run_suite(Suite::Claims, &QuadratureSpec::default()).unwrap();
    let reported = !claims.checks.is_empty() && claims.checks.iter().all(|c| c.value.is_finite() && !c.note.is_empty());
    outcome(
        (slope - 2.0).abs() <= FIGURE_SLOPE_ABS && monotone && reported,
        format!("slope {slope:.6}, monotone {monotone}, claims rows {}", claims.checks.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 table of angular components", criterion_1),
        ("2 basis integrity", criterion_2),
        ("3 series equals closed form", criterion_3),
        ("4 oracle linearity", criterion_4),
        ("5 parseval consistency", criterion_5),
        ("6 detuning arithmetic", criterion_6),
        ("7 rabi formula suite", criterion_7),
        ("8 completed-cycle series shape", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let o = f();
        let status = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failed += 1;
        }
        println!("{status} criterion {name} [{:.3}s]: {}", start.elapsed().as_secs_f64(), o.detail);
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

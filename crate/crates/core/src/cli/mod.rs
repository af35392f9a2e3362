//! Command-line front end.
//!
//! Every subcommand builds a [`RunConfig`], calls into the library and
//! writes one [`Table`] as CSV (default) or JSON. Exit codes: 0 success,
//! 1 verification failure, 2 usage or domain error, 3 numerical
//! non-convergence.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{self, SpeciesProfile};
use crate::constants;
use crate::distortion::{
    closed_form_coefficients, closed_form_decomposition, numeric_decomposition, series_decomposition_with,
    RadialFactor, SpectralDecomposition, Strain, Truncation, DEFAULT_K_MAX,
};
use crate::hydrogenics::AtomicState;
use crate::output::{self, format_float, Format, Table};
use crate::quadrature::{QuadratureSpec, RadialScheme};
use crate::rabi::{self, Abscissa, RabiConfig};
use crate::transitions::{transition_detuning, wavelength_shift, DefectTable, TransitionSpec};
use crate::verify::{self, Suite};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "gravatom", version, about = "Gravitational-wave strain acting on hydrogen-like atoms")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Species profile name (bundled: hydrogen, rb-example).
    #[arg(long, global = true)]
    pub species: Option<String>,
    /// Configuration file searched before GRAVATOM_CONFIG and the bundled profiles.
    #[arg(long, global = true, value_name = "FILE")]
    pub defects: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Output file; stdout when omitted.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Record the wall-clock time in the metadata header.
    #[arg(long, global = true)]
    pub stamp: bool,
    #[arg(long, global = true, default_value_t = QuadratureSpec::default().radial_node_count)]
    pub radial_nodes: usize,
    #[arg(long, global = true, default_value_t = QuadratureSpec::default().angular_node_count)]
    pub angular_nodes: usize,
    /// gauss-laguerre-transformed or adaptive-panel.
    #[arg(long, global = true, default_value = "gauss-laguerre-transformed")]
    pub radial_scheme: String,
    #[arg(long, global = true, default_value_t = QuadratureSpec::default().target_abs_tolerance)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    ClosedForm,
    Series,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RadialFactorArg {
    Printed,
    Numeric,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral decomposition of a distorted state.
    Decompose {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        strain: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::ClosedForm)]
        method: MethodArg,
        /// Series truncation order.
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: u32,
        #[arg(long, value_enum, default_value_t = RadialFactorArg::Printed)]
        radial_factor: RadialFactorArg,
        #[arg(long, default_value_t = Truncation::default().delta_n)]
        delta_n: u32,
        #[arg(long, default_value_t = Truncation::default().l_max)]
        l_max: u32,
    },
    /// Strain-induced detuning of a transition.
    Detuning {
        /// Lower state, e.g. 1s or 50s.
        #[arg(long)]
        lower: String,
        /// Upper state, e.g. 2p or 51p.
        #[arg(long)]
        upper: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        strain: f64,
        /// Line frequency with unit (e.g. 4.8GHz) for a wavelength-shift column.
        #[arg(long)]
        line_frequency: Option<String>,
    },
    /// Rabi deviation series.
    Rabi {
        /// Rabi frequency with unit: Hz/kHz/MHz/GHz are cyclic, rad/s angular.
        #[arg(long)]
        omega: String,
        /// Detuning with unit (Hz, kHz, MHz, GHz, rad/s, eV, Hartree).
        #[arg(long, conflicts_with = "detuning_from")]
        detuning: Option<String>,
        /// Transition supplying the detuning, as lower:upper (e.g. 50s:51p).
        #[arg(long)]
        detuning_from: Option<String>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        strain: f64,
        /// Completed cycles N = 1..=cycles (accepts 1e6).
        #[arg(long, conflicts_with = "times")]
        cycles: Option<String>,
        /// Comma-separated times in seconds.
        #[arg(long, value_delimiter = ',')]
        times: Option<Vec<f64>>,
    },
    /// Completed-cycle deviation series for a transition (N, deltaP, regime).
    Figure2 {
        #[arg(long, default_value = "47kHz")]
        omega: String,
        #[arg(long, default_value_t = verify::FIGURE_STRAIN, allow_negative_numbers = true)]
        strain: f64,
        #[arg(long, default_value = "1000")]
        cycles: String,
        #[arg(long, default_value = "50s")]
        lower: String,
        #[arg(long, default_value = "51p")]
        upper: String,
    },
    /// Run verification suites; exits 1 if any gated check fails.
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
    },
    /// Report the magnitude statements with their assumptions.
    Claims,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub species: String,
    pub defect_table: DefectTable,
    pub profile_origin: String,
    pub strain: Strain,
    pub quadrature: QuadratureSpec,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub stamp: bool,
}

impl RunConfig {
    fn build(common: &CommonArgs, default_species: &str, strain: f64) -> Result<Self> {
        let species = common.species.clone().unwrap_or_else(|| default_species.to_string());
        let SpeciesProfile { table, origin, .. } = config::load_species(&species, common.defects.as_deref())?;
        let quadrature = QuadratureSpec {
            radial_node_count: common.radial_nodes,
            angular_node_count: common.angular_nodes,
            radial_scheme: common.radial_scheme.parse::<RadialScheme>()?,
            target_abs_tolerance: common.tolerance,
        };
        quadrature.validate()?;
        Ok(Self {
            species,
            defect_table: table,
            profile_origin: origin,
            strain: Strain::new(strain)?,
            quadrature,
            output_format: match common.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            },
            output_path: common.output.clone(),
            stamp: common.stamp,
        })
    }

    fn emit(&self, table: &Table) -> Result<()> {
        let stamp = self.stamp.then(output::unix_stamp);
        let text = table.render(self.output_format, stamp.as_deref());
        output::write_output(&text, self.output_path.as_deref())
    }

    fn annotate_quadrature(&self, t: &mut Table) {
        let q = &self.quadrature;
        t.meta("radial_scheme", q.radial_scheme)
            .meta("radial_nodes", q.radial_node_count)
            .meta("angular_nodes", q.angular_node_count)
            .meta_float("target_abs_tolerance", q.target_abs_tolerance);
    }

    fn annotate_species(&self, t: &mut Table) {
        t.meta("species", &self.species)
            .meta("species_origin", &self.profile_origin)
            .meta("energy_model", self.defect_table.energy_model());
    }
}

/// Runs with the process arguments.
pub fn run() -> i32 {
    run_with(std::env::args_os())
}

/// Runs with explicit arguments (the first is the program name).
pub fn run_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let common = &cli.common;
    match &cli.command {
        Command::Decompose { n, l, m, strain, method, k_max, radial_factor, delta_n, l_max } => {
            let source = AtomicState::new(*n, *l, *m)?;
            let cfg = RunConfig::build(common, "hydrogen", *strain)?;
            let truncation = Truncation { delta_n: *delta_n, l_max: *l_max };
            let radial = match radial_factor {
                RadialFactorArg::Printed => RadialFactor::Printed,
                RadialFactorArg::Numeric => RadialFactor::Numeric,
            };
            cmd_decompose(source, &cfg, *method, *k_max, radial, truncation)
        }
        Command::Detuning { lower, upper, strain, line_frequency } => {
            let cfg = RunConfig::build(common, "hydrogen", *strain)?;
            let line = line_frequency.as_deref().map(config::parse_frequency).transpose()?;
            cmd_detuning(config::parse_state(lower)?, config::parse_state(upper)?, &cfg, line)
        }
        Command::Rabi { omega, detuning, detuning_from, strain, cycles, times } => {
            let cfg = RunConfig::build(common, "hydrogen", *strain)?;
            let omega = config::parse_frequency(omega)?;
            let source = match (detuning, detuning_from) {
                (Some(d), None) => DetuningSource::Direct(config::parse_detuning(d)?),
                (None, Some(pair)) => {
                    let (lo, up) = config::parse_state_pair(pair)?;
                    DetuningSource::Transition(TransitionSpec::new(lo, up, &cfg.defect_table)?)
                }
                _ => return Err(Error::Config("give exactly one of --detuning or --detuning-from".into())),
            };
            let abscissa = match (cycles, times) {
                (Some(c), None) => Abscissa::Cycles(config::parse_count(c)?),
                (None, Some(ts)) => Abscissa::Times(ts.clone()),
                _ => return Err(Error::Config("give exactly one of --cycles or --times".into())),
            };
            cmd_rabi(omega, source, abscissa, &cfg)
        }
        Command::Figure2 { omega, strain, cycles, lower, upper } => {
            let cfg = RunConfig::build(common, "rb-example", *strain)?;
            let t = TransitionSpec::new(config::parse_state(lower)?, config::parse_state(upper)?, &cfg.defect_table)?;
            cmd_figure2(&t, config::parse_frequency(omega)?, config::parse_count(cycles)?, &cfg)
        }
        Command::Verify { suite } => {
            let cfg = RunConfig::build(common, "hydrogen", 0.0)?;
            cmd_verify(suite.parse()?, &cfg)
        }
        Command::Claims => {
            let cfg = RunConfig::build(common, "hydrogen", 0.0)?;
            cmd_verify(Suite::Claims, &cfg)
        }
    }
}

fn decomposition_meta(t: &mut Table, d: &SpectralDecomposition) {
    t.meta("method", d.method)
        .meta("source", d.source)
        .meta_float("strain", d.strain.value())
        .meta("k_max", d.k_max)
        .meta_float("norm_sum", d.norm_sum);
    if let Some(n) = d.direct_norm {
        t.meta_float("direct_norm", n);
    }
    if let Some(g) = d.parseval_gap() {
        t.meta_float("parseval_gap", g);
    }
    if let Some(tr) = d.truncation {
        t.meta("truncation", format!("delta_n={} l_max={}", tr.delta_n, tr.l_max));
    }
    for w in &d.warnings {
        t.meta("warning", w);
    }
}

pub fn cmd_decompose(
    source: AtomicState,
    cfg: &RunConfig,
    method: MethodArg,
    k_max: u32,
    radial: RadialFactor,
    truncation: Truncation,
) -> Result<i32> {
    source.require_axial()?;
    let d = match method {
        MethodArg::ClosedForm => closed_form_decomposition(source, cfg.strain)?,
        MethodArg::Series => {
            series_decomposition_with(source, cfg.strain, k_max, radial, &cfg.quadrature, truncation)?
        }
        MethodArg::Numeric => numeric_decomposition(source, cfg.strain, &cfg.quadrature, truncation)?,
    };
    let mut t = if method == MethodArg::ClosedForm {
        Table::new(&[("n", ""), ("l", ""), ("m", ""), ("coefficient", "1"), ("slope", "1/strain")])
    } else {
        Table::new(&[("n", ""), ("l", ""), ("m", ""), ("coefficient", "1")])
    };
    decomposition_meta(&mut t, &d);
    if method == MethodArg::Series {
        t.meta("radial_factor", radial);
    }
    if method != MethodArg::ClosedForm {
        cfg.annotate_quadrature(&mut t);
    }
    let slopes = if method == MethodArg::ClosedForm { Some(closed_form_coefficients(source)?.targets()) } else { None };
    for e in &d.entries {
        let mut row = vec![e.state.n.into(), e.state.l.into(), e.state.m.into(), e.coefficient.into()];
        if let Some(s) = &slopes {
            let slope = s.iter().find(|(st, _)| *st == e.state).map(|(_, c)| c.slope()).unwrap_or(0.0);
            row.push(slope.into());
        }
        t.push(row);
    }
    cfg.emit(&t)?;
    Ok(0)
}

/// |slope| of hydrogen 1S-2P, the reference for the enhancement column.
fn reference_slope() -> Result<f64> {
    let h = DefectTable::hydrogen();
    let t = TransitionSpec::new(AtomicState::axial(1, 0)?, AtomicState::axial(2, 1)?, &h)?;
    Ok(transition_detuning(&t, Strain::zero()).slope.abs())
}

pub fn cmd_detuning(lower: AtomicState, upper: AtomicState, cfg: &RunConfig, line_frequency: Option<f64>) -> Result<i32> {
    let spec = TransitionSpec::new(lower, upper, &cfg.defect_table)?;
    let det = transition_detuning(&spec, cfg.strain);
    let delta = det.at_strain.unwrap_or(0.0);
    let mut cols = vec![
        ("transition", ""),
        ("lower_energy", "Hartree"),
        ("upper_energy", "Hartree"),
        ("delta_e", "Hartree"),
        ("lower_shift_slope", "Hartree/strain"),
        ("upper_shift_slope", "Hartree/strain"),
        ("slope", "Hartree/strain"),
        ("delta", "Hartree"),
        ("delta_hz", "Hz"),
        ("ratio_to_hydrogen_1s2p", "1"),
    ];
    if line_frequency.is_some() {
        cols.push(("wavelength_shift", "m"));
    }
    let mut t = Table::new(&cols);
    cfg.annotate_species(&mut t);
    t.meta_float("strain", cfg.strain.value());
    t.meta("ratio_reference", "|slope| / |slope of hydrogen 1s-2p|; compare with the 1e5 enhancement statement");
    let mut row = vec![
        spec.label().into(),
        spec.lower_energy.into(),
        spec.upper_energy.into(),
        spec.delta_e.into(),
        det.per_level_shift_slopes.0.into(),
        det.per_level_shift_slopes.1.into(),
        det.slope.into(),
        delta.into(),
        constants::hartree_to_hz(delta).into(),
        (det.slope.abs() / reference_slope()?).into(),
    ];
    if let Some(nu) = line_frequency {
        t.meta_float("line_frequency_hz", nu / (2.0 * std::f64::consts::PI));
        row.push(wavelength_shift(nu / (2.0 * std::f64::consts::PI), &det, cfg.strain)?.into());
    }
    t.push(row);
    cfg.emit(&t)?;
    Ok(0)
}

pub enum DetuningSource {
    /// rad/s
    Direct(f64),
    Transition(TransitionSpec),
}

pub fn cmd_rabi(omega: f64, source: DetuningSource, abscissa: Abscissa, cfg: &RunConfig) -> Result<i32> {
    let mut t = Table::new(&[
        ("abscissa", ""),
        ("t", "s"),
        ("deltaP_exact", "1"),
        ("deltaP_small_detuning", "1"),
        ("deltaP_short_time", "1"),
        ("deltaP_cycles", "1"),
        ("regime", ""),
    ]);
    let rabi_cfg = match source {
        DetuningSource::Direct(delta) => {
            t.meta("detuning_source", "direct");
            RabiConfig::new(omega, delta)?
        }
        DetuningSource::Transition(spec) => {
            let (rc, meta) = rabi::strain_rabi_config(&spec, cfg.strain, omega)?;
            cfg.annotate_species(&mut t);
            t.meta("detuning_source", meta.transition)
                .meta_float("strain", meta.strain)
                .meta_float("detuning_slope_hartree", meta.detuning_slope_hartree)
                .meta_float("detuning_hartree", meta.detuning_hartree);
            rc
        }
    };
    let rabi_cfg = match abscissa {
        Abscissa::Cycles(n) => rabi_cfg.with_cycles(n),
        Abscissa::Times(ts) => rabi_cfg.with_times(ts)?,
    };
    t.meta_float("omega_rad_per_s", rabi_cfg.omega)
        .meta_float("omega_cyclic_hz", rabi_cfg.omega / (2.0 * std::f64::consts::PI))
        .meta_float("detuning_rad_per_s", rabi_cfg.detuning)
        .meta("deltaP_exact", "P_e(0,t) - P_e(Delta,t); negative at completed cycles");
    if rabi_cfg.ratio().abs() > rabi::SMALL_DETUNING_LIMIT {
        log::warn!("|Delta|/omega = {} exceeds {}; small-detuning column is outside its regime", rabi_cfg.ratio().abs(), rabi::SMALL_DETUNING_LIMIT);
        t.meta("warning", "small-detuning form outside |Delta| <= 0.1 omega");
    }
    let s = rabi::deviation_series(&rabi_cfg);
    t.columns[0].name = s.abscissa_kind.clone();
    t.columns[0].unit = if s.abscissa_kind == "t" { "s".into() } else { "1".into() };
    for i in 0..s.len() {
        t.push(vec![
            s.abscissa[i].into(),
            s.time[i].into(),
            s.exact[i].into(),
            s.small_detuning[i].into(),
            s.short_time[i].into(),
            s.completed_cycles[i].into(),
            s.regime_flags[i].to_string().into(),
        ]);
    }
    cfg.emit(&t)?;
    Ok(0)
}

pub fn cmd_figure2(spec: &TransitionSpec, omega: f64, cycles: u64, cfg: &RunConfig) -> Result<i32> {
    let fig = rabi::figure2_series(spec, cfg.strain, omega, cycles)?;
    let mut t = Table::new(&[("N", "1"), ("deltaP", "1"), ("regime", "")]);
    let m = &fig.meta;
    cfg.annotate_species(&mut t);
    t.meta("transition", &m.transition)
        .meta_float("strain", m.strain)
        .meta_float("omega_rad_per_s", m.omega_rad_per_s)
        .meta_float("omega_cyclic_hz", m.omega_cyclic_hz)
        .meta("omega_convention", "Hz suffix is cyclic (omega = 2 pi f), rad/s is angular")
        .meta_float("detuning_slope_hartree", m.detuning_slope_hartree)
        .meta_float("detuning_hartree", m.detuning_hartree)
        .meta_float("detuning_rad_per_s", m.detuning_rad_per_s)
        .meta("deltaP", "(N pi Delta^2 / (2 omega^2))^2");
    let s = &fig.series;
    for i in 0..s.len() {
        t.push(vec![(s.abscissa[i] as u64).into(), s.completed_cycles[i].into(), s.regime_flags[i].to_string().into()]);
    }
    cfg.emit(&t)?;
    Ok(0)
}

pub fn cmd_verify(suite: Suite, cfg: &RunConfig) -> Result<i32> {
    let report = verify::run_suite(suite, &cfg.quadrature)?;
    let mut t = report.to_table();
    cfg.annotate_quadrature(&mut t);
    cfg.emit(&t)?;
    for f in report.failures() {
        eprintln!("FAIL {}: {} (error {} > {})", f.suite, f.check, format_float(f.error), format_float(f.tolerance));
    }
    Ok(if report.passed() { 0 } else { 1 })
}

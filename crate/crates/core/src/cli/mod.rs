//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command and writes the report.
//! Exit codes: 0 success, 2 bad arguments or unreadable config, 3 invalid
//! configuration or physical domain, 4 numerical failure.

mod config;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{load_config, parse_config, ChannelsConfig, Config, DropConfig, OrbitConfig, ReferenceNote};
pub use report::{json_number, sci, to_json, Cell, Entry, Provenance, Report, Table, ARTIFACT_VERSION};

use crate::error::Error;
use crate::linkbudget::{
    gravity_wave_impedance, sweep, LinkReport, PminVariant, FARADAY_EM_LEAKAGE, FARADAY_GR_TRANSMISSION,
};
use crate::orbitsim::{
    differential_drift_with, integrate_decay_with, DecayOptions, LossChannels, OrbitBody, OutputGrid,
    DEFAULT_DRIFT_SAMPLES,
};
use crate::radiation::{gr_negligible, power_breakdown, power_ratio, RadiatingBody, DEFAULT_NEGLIGIBLE_THRESHOLD};
use crate::transducer::{
    atom_count, branching, critical_mass, cyclotron_gap, enhancement_factor, planck_mass, zero_phonon_probability,
    CROSS_SECTION_PRECISION,
};
use crate::units::{constants, describe, named_mass, parse_quantity, Dimension, Quantity};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

const DEFAULT_ORBIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Printed,
    RootBw,
}

impl From<VariantArg> for PminVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Printed => PminVariant::AsPrinted,
            VariantArg::RootBw => PminVariant::PerRootBandwidth,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChannelsArg {
    Both,
    EmOnly,
    GrOnly,
}

impl From<ChannelsArg> for ChannelsConfig {
    fn from(c: ChannelsArg) -> Self {
        match c {
            ChannelsArg::Both => ChannelsConfig::Both,
            ChannelsArg::EmOnly => ChannelsConfig::EmOnly,
            ChannelsArg::GrOnly => ChannelsConfig::GrOnly,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gravlink",
    version,
    about = "Gravitational-wave transducer and link-budget calculator"
)]
struct Cli {
    /// Scenario file (JSON, fields as {"value", "unit"})
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format (default: table on stdout, json with --out)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Radiometer floor variant
    #[arg(long, global = true, value_enum)]
    pmin_variant: Option<VariantArg>,
    /// Relative tolerance for the orbit integrator
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the physical constants in use
    Constants,
    /// Gravitational-to-electromagnetic radiated power ratio
    Ratio(RatioArgs),
    /// Mass at which the two radiation channels are equal
    CriticalMass(CriticalMassArgs),
    /// Properties of a single charged superfluid drop
    Drop(DropArgs),
    /// Orbital decay under radiation reaction
    Orbit(OrbitArgs),
    /// Evaluate the link budget of a scenario
    Link,
    /// Parameter sweep over a scenario's link budget
    Sweep,
}

#[derive(Debug, Args)]
struct RatioArgs {
    /// Charge, e.g. "e", "3e", "1.6e-19 C"
    #[arg(long, default_value = "e")]
    q: String,
    /// Mass, e.g. "electron", "planck", "1.9ug"
    #[arg(long, default_value = "electron")]
    m: String,
    /// Acceleration; when given, absolute powers are reported too
    #[arg(long)]
    acceleration: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
}

#[derive(Debug, Args)]
struct CriticalMassArgs {
    #[arg(long, default_value_t = 1)]
    electrons: u32,
}

#[derive(Debug, Args)]
struct DropArgs {
    #[arg(long)]
    mass: Option<String>,
    #[arg(long)]
    electrons: Option<u32>,
    #[arg(long)]
    radius: Option<String>,
    #[arg(long)]
    temp: Option<String>,
    #[arg(long)]
    b_field: Option<String>,
    #[arg(long)]
    molar_mass: Option<String>,
}

#[derive(Debug, Args)]
struct OrbitArgs {
    #[arg(long)]
    mass: Option<String>,
    #[arg(long)]
    charge: Option<String>,
    /// Central mass, or "earth"
    #[arg(long)]
    central_mass: Option<String>,
    #[arg(long)]
    r0: Option<String>,
    #[arg(long)]
    t_end: Option<String>,
    #[arg(long)]
    r_min: Option<String>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long, value_enum)]
    channels: Option<ChannelsArg>,
    /// Report on a uniform grid of this many intervals instead of every step
    #[arg(long)]
    samples: Option<usize>,
    /// Report the radial drift against a neutral body of equal mass
    #[arg(long)]
    drift: bool,
    /// Give up after this many integrator steps
    #[arg(long)]
    max_steps: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Model(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => Failure::Usage(e.to_string()),
            e => Failure::Model(e),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parses a flag value and checks its dimension. Masses also accept the
/// names understood by [`named_mass`], central masses also accept "earth".
fn flag_quantity(flag: &str, text: &str, dim: Dimension) -> Outcome<Quantity> {
    let named = if dim == Dimension::MASS {
        match text.trim() {
            "earth" => Some(constants().earth_mass()),
            other => named_mass(other),
        }
    } else {
        None
    };
    let q = match named {
        Some(q) => q,
        None => parse_quantity(text).map_err(|e| usage(format!("--{flag}: {e}")))?,
    };
    if q.dim() != dim {
        return Err(usage(format!(
            "--{flag}: \"{text}\" has dimension {}, expected {}",
            q.dim(),
            describe(dim)
        )));
    }
    Ok(q)
}

fn opt_flag(flag: &str, text: &Option<String>, dim: Dimension) -> Outcome<Option<Quantity>> {
    text.as_deref().map(|t| flag_quantity(flag, t, dim)).transpose()
}

fn pick(flag: &str, from_flag: Option<Quantity>, from_config: Option<Quantity>) -> Outcome<Quantity> {
    from_flag
        .or(from_config)
        .ok_or_else(|| usage(format!("missing --{flag} (or a config file providing it)")))
}

/// Entry point used by the binary and by tests. Returns the process exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    let prov = Provenance::new(&args);
    match execute(&cli, &prov, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Model(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_CONFIG
            }
        }
    }
}

fn execute(cli: &Cli, prov: &Provenance, stdout: &mut dyn Write) -> Outcome<()> {
    let config = match &cli.config {
        Some(p) => Some(load_config(p)?),
        None => None,
    };
    let report = match &cli.command {
        Command::Constants => constants_report(),
        Command::Ratio(a) => ratio_report(a)?,
        Command::CriticalMass(a) => critical_mass_report(a.electrons)?,
        Command::Drop(a) => drop_report(a, config.as_ref())?,
        Command::Orbit(a) => orbit_report(a, config.as_ref(), cli.tol)?,
        Command::Link => link_report(cli, config.as_ref())?,
        Command::Sweep => sweep_report(cli, config.as_ref())?,
    };
    let format = cli
        .format
        .unwrap_or(if cli.out.is_some() { Format::Json } else { Format::Table });
    match &cli.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            emit(&mut w, format, &report, prov)
                .and_then(|_| w.flush())
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
        }
        None => emit(stdout, format, &report, prov).map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn emit(w: &mut dyn Write, format: Format, report: &Report, prov: &Provenance) -> io::Result<()> {
    match format {
        Format::Json => report::write_json(w, report, prov),
        Format::Csv => report::write_csv(w, report, prov),
        Format::Table => report::write_table(w, report, prov),
    }
}

fn constants_report() -> Report {
    let k = constants();
    let mut r = Report::new("constants");
    r.push("release", k.release, "");
    r.push("G", k.g.magnitude(), "m3 kg-1 s-2");
    r.push("c", k.c.magnitude(), "m s-1");
    r.push("hbar", k.hbar.magnitude(), "J s");
    r.push("e", k.e.magnitude(), "C");
    r.push("k_B", k.k_b.magnitude(), "J K-1");
    r.push("k_e", k.k_e.magnitude(), "N m2 C-2");
    r.push("m_e", k.m_e.magnitude(), "kg");
    r.push("m_He4", k.m_he4.magnitude(), "kg");
    r.push("N_A", k.n_a.magnitude(), "mol-1");
    r.push("alpha", k.alpha(), "");
    r.push("alpha_inverse", 1.0 / k.alpha(), "");
    r.push("Z_G", gravity_wave_impedance().magnitude(), "m2 kg-1 s-1");
    r
}

fn ratio_report(a: &RatioArgs) -> Outcome<Report> {
    let q = flag_quantity("q", &a.q, Dimension::CHARGE)?;
    let m = flag_quantity("m", &a.m, Dimension::MASS)?;
    let ratio = power_ratio(q, m)?;
    let mut r = Report::new("ratio");
    r.push("charge_C", q.magnitude(), "C");
    r.push("mass_kg", m.magnitude(), "kg");
    r.push("kappa", a.kappa, "");
    r.push_shown("power_ratio", ratio, "", sci(ratio, 2));
    r.push("gr_negligible", gr_negligible(q, m, a.kappa)?, "");
    r.push("negligible_threshold", DEFAULT_NEGLIGIBLE_THRESHOLD, "");
    if let Some(acc) = &a.acceleration {
        let acc = flag_quantity("acceleration", acc, Dimension::ACCELERATION)?;
        let b = power_breakdown(&RadiatingBody::new(q, m, acc, a.kappa)?)?;
        r.push("p_em_W", b.p_em.magnitude(), "W");
        r.push("p_gr_W", b.p_gr.magnitude(), "W");
    }
    Ok(r)
}

fn micrograms(m: Quantity) -> String {
    format!("{:.1} \u{3bc}g", m.magnitude() * 1e9)
}

fn critical_mass_report(electrons: u32) -> Outcome<Report> {
    let m_crit = critical_mass(electrons)?;
    let m_p = planck_mass()?;
    let he = constants().m_he4.magnitude();
    let mut r = Report::new("critical-mass");
    r.push("electrons", electrons, "");
    r.push_shown("critical_mass_kg", m_crit.magnitude(), "kg", micrograms(m_crit));
    r.push_shown("planck_mass_kg", m_p.magnitude(), "kg", micrograms(m_p));
    r.push("critical_over_planck", m_crit.magnitude() / m_p.magnitude(), "");
    r.push("helium_atoms_at_critical", m_crit.magnitude() / he, "");
    Ok(r)
}

fn drop_report(a: &DropArgs, config: Option<&Config>) -> Outcome<Report> {
    let base = config.and_then(|c| c.drop.as_ref());
    let drop = DropConfig {
        mass: pick(
            "mass",
            opt_flag("mass", &a.mass, Dimension::MASS)?,
            base.map(|d| d.mass),
        )?,
        electrons: a.electrons.or(base.map(|d| d.electrons)).unwrap_or(1),
        radius: pick(
            "radius",
            opt_flag("radius", &a.radius, Dimension::LENGTH)?,
            base.map(|d| d.radius),
        )?,
        temperature: pick(
            "temp",
            opt_flag("temp", &a.temp, Dimension::TEMPERATURE)?,
            base.map(|d| d.temperature),
        )?,
        b_field: pick(
            "b-field",
            opt_flag("b-field", &a.b_field, Dimension::FLUX_DENSITY)?,
            base.map(|d| d.b_field),
        )?,
        molar_mass: opt_flag("molar-mass", &a.molar_mass, Dimension::MOLAR_MASS)?.or(base.and_then(|d| d.molar_mass)),
        kappa: base.map(|d| d.kappa).unwrap_or(1.0),
    };
    let spec = drop.to_spec()?;
    let rho = spec.coupling_ratio()?;
    let m_crit = critical_mass(spec.n_electrons())?;

    let mut r = Report::new("drop");
    r.push_shown("mass_kg", spec.mass().magnitude(), "kg", micrograms(spec.mass()));
    r.push("electrons", spec.n_electrons(), "");
    r.push("charge_C", spec.charge().magnitude(), "C");
    r.push("radius_m", spec.radius().magnitude(), "m");
    r.push("temperature_K", spec.temperature().magnitude(), "K");
    r.push("b_field_T", spec.b_field().magnitude(), "T");
    r.push("molar_mass_kg_per_mol", spec.molar_mass().magnitude(), "kg mol-1");
    r.push("atom_count", atom_count(&spec)?, "");
    r.push("enhancement_factor", enhancement_factor(&spec)?, "");
    r.push("coupling_ratio", rho, "");
    r.push("conversion_efficiency", branching(rho), "");
    r.push("critical_mass_kg", m_crit.magnitude(), "kg");
    r.push("mass_over_critical", spec.mass().magnitude() / m_crit.magnitude(), "");
    if spec.b_field().magnitude() > 0.0 {
        let gap = cyclotron_gap(spec.b_field())?;
        r.push("cyclotron_gap_J", gap.magnitude(), "J");
        r.push("cyclotron_gap_K", gap.magnitude() / constants().k_b.magnitude(), "K");
        r.push(
            "zero_phonon_probability",
            zero_phonon_probability(gap, spec.temperature())?,
            "",
        );
    } else {
        r.push("zero_phonon_probability", 0.0, "");
    }
    Ok(r)
}

fn orbit_report(a: &OrbitArgs, config: Option<&Config>, tol: Option<f64>) -> Outcome<Report> {
    let base = config.and_then(|c| c.orbit.as_ref());
    let orbit = OrbitConfig {
        mass: pick(
            "mass",
            opt_flag("mass", &a.mass, Dimension::MASS)?,
            base.map(|o| o.mass),
        )?,
        charge: pick(
            "charge",
            opt_flag("charge", &a.charge, Dimension::CHARGE)?,
            base.map(|o| o.charge),
        )?,
        central_mass: pick(
            "central-mass",
            opt_flag("central-mass", &a.central_mass, Dimension::MASS)?,
            base.map(|o| o.central_mass),
        )?,
        r0: pick("r0", opt_flag("r0", &a.r0, Dimension::LENGTH)?, base.map(|o| o.r0))?,
        t_end: pick(
            "t-end",
            opt_flag("t-end", &a.t_end, Dimension::TIME)?,
            base.map(|o| o.t_end),
        )?,
        r_min: pick(
            "r-min",
            opt_flag("r-min", &a.r_min, Dimension::LENGTH)?,
            base.map(|o| o.r_min),
        )?,
        kappa: a.kappa.or(base.map(|o| o.kappa)).unwrap_or(1.0),
        rel_tol: tol.or(base.and_then(|o| o.rel_tol)),
        channels: a
            .channels
            .map(Into::into)
            .or(base.map(|o| o.channels))
            .unwrap_or_default(),
    };
    let rel_tol = orbit.rel_tol.unwrap_or(DEFAULT_ORBIT_TOL);
    let (body, central) = orbit.bodies()?;
    let channels: LossChannels = orbit.channels.into();

    let mut r = Report::new("orbit");
    r.push("mass_kg", body.mass().magnitude(), "kg");
    r.push("charge_C", body.charge().magnitude(), "C");
    r.push("central_mass_kg", central.mass().magnitude(), "kg");
    r.push("r0_m", orbit.r0.magnitude(), "m");
    r.push("kappa", body.kappa(), "");
    r.push("rel_tol", rel_tol, "");

    if a.drift {
        let neutral = OrbitBody::neutral(body.mass(), body.kappa())?;
        let n = a.samples.unwrap_or(DEFAULT_DRIFT_SAMPLES);
        let drift = differential_drift_with(&body, &neutral, &central, orbit.r0, orbit.t_end, rel_tol, n)?;
        let last = drift.last().map(|s| s.delta_r_m).unwrap_or(0.0);
        r.push("t_end_s", orbit.t_end.magnitude(), "s");
        r.push("delta_r_final_m", last, "m");
        r.table = Some(Table {
            name: "drift",
            columns: vec!["t_s".into(), "delta_r_m".into()],
            rows: drift.iter().map(|s| vec![s.t_s.into(), s.delta_r_m.into()]).collect(),
        });
        r.tabular_csv = true;
        return Ok(r);
    }

    let mut opts = DecayOptions::new(rel_tol).channels(channels);
    if let Some(n) = a.max_steps {
        opts.max_steps = n;
    }
    if let Some(n) = a.samples {
        opts = opts.output(OutputGrid::Uniform(n));
    }
    let trace = integrate_decay_with(&body, &central, orbit.r0, orbit.t_end, orbit.r_min, &opts)?;
    let last = trace.last();
    r.push("channels", channels_label(channels), "");
    r.push(
        "termination",
        match trace.termination {
            crate::orbitsim::Termination::ReachedTEnd => "reached-t-end",
            crate::orbitsim::Termination::ReachedRMin => "reached-r-min",
        },
        "",
    );
    r.push("t_final_s", last.t_s, "s");
    r.push("r_final_m", last.r_m, "m");
    r.push("drift_m", last.drift_m, "m");
    r.push("E_rad_em_J", last.e_rad_em_j, "J");
    r.push("E_rad_gr_J", last.e_rad_gr_j, "J");
    r.push("samples", trace.samples.len(), "");
    r.table = Some(Table {
        name: "samples",
        columns: ["t_s", "r_m", "E_rad_em_J", "E_rad_gr_J"].map(String::from).to_vec(),
        rows: trace
            .samples
            .iter()
            .map(|s| vec![s.t_s.into(), s.r_m.into(), s.e_rad_em_j.into(), s.e_rad_gr_j.into()])
            .collect(),
    });
    r.tabular_csv = true;
    Ok(r)
}

fn channels_label(c: LossChannels) -> &'static str {
    match c {
        LossChannels::Both => "both",
        LossChannels::EmOnly => "em-only",
        LossChannels::GrOnly => "gr-only",
    }
}

fn require_config<'a>(cli: &Cli, config: Option<&'a Config>) -> Outcome<&'a Config> {
    config.ok_or_else(|| {
        let name = match cli.command {
            Command::Sweep => "sweep",
            _ => "link",
        };
        usage(format!("`{name}` needs --config <FILE>"))
    })
}

fn link_entries(r: &mut Report, report: &LinkReport) {
    r.push("p_received_W", report.p_received.magnitude(), "W");
    r.push("p_min_W", report.p_min.magnitude(), "W");
    r.push("pmin_variant", report.pmin_variant.as_str(), "");
    r.push("p_min_printed_W", report.p_min_printed.magnitude(), "W");
    r.push("p_min_root_bw_W", report.p_min_root_bw.magnitude(), "W");
    r.push("snr", report.snr, "");
    r.push("detectable", report.detectable, "");
    r.push("eta_tx", report.eta_tx, "");
    r.push("eta_rx", report.eta_rx, "");
    r.push("coupling", report.coupling, "");
    r.push("sigma_rx_m2", report.sigma_rx.magnitude(), "m2");
    r.push("cross_section_precision", CROSS_SECTION_PRECISION, "");
    r.push("faraday_gr_transmission", FARADAY_GR_TRANSMISSION, "");
    r.push("faraday_em_leakage", FARADAY_EM_LEAKAGE, "");
    r.push("Z_G", gravity_wave_impedance().magnitude(), "m2 kg-1 s-1");
    for s in &report.stages {
        r.push(format!("stage_{}_factor", s.label), s.factor, "");
        r.push(format!("stage_{}_W", s.label), s.power.magnitude(), "W");
    }
}

fn reference_entries(r: &mut Report, note: &ReferenceNote, eta_tx: f64) {
    r.push("reference", note.label.clone(), "");
    if let Some(f) = note.frequency {
        r.push("reference_frequency_Hz", f.magnitude(), "Hz");
    }
    if let Some(cap) = note.efficiency_cap {
        r.push("reference_efficiency_cap", cap.magnitude(), "");
        r.push("eta_tx_above_reference_cap", eta_tx > cap.magnitude(), "");
    }
    if let Some(n) = &note.note {
        r.push("reference_note", n.clone(), "");
    }
}

fn link_report(cli: &Cli, config: Option<&Config>) -> Outcome<Report> {
    let config = require_config(cli, config)?;
    let mut scenario = config.link.clone().ok_or_else(|| {
        Failure::Model(Error::Config(format!(
            "{}: no link scenario in file",
            config.path.display()
        )))
    })?;
    if let Some(v) = cli.pmin_variant {
        scenario.receiver = scenario.receiver.with_variant(v.into());
    }
    let report = scenario.evaluate()?;
    let mut r = Report::new("link");
    if let Some(d) = &config.description {
        r.push("description", d.clone(), "");
    }
    link_entries(&mut r, &report);
    if let Some(f) = scenario.receiver.center_frequency() {
        r.push("receiver_center_frequency_Hz", f.magnitude(), "Hz");
    }
    if let Some(note) = &config.reference {
        reference_entries(&mut r, note, report.eta_tx);
    }
    r.table = Some(Table {
        name: "stages",
        columns: ["stage", "factor", "power_W"].map(String::from).to_vec(),
        rows: report
            .stages
            .iter()
            .map(|s| vec![s.label.into(), s.factor.into(), s.power.magnitude().into()])
            .collect(),
    });
    Ok(r)
}

fn sweep_report(cli: &Cli, config: Option<&Config>) -> Outcome<Report> {
    let config = require_config(cli, config)?;
    let mut cfg = config.sweep.clone().ok_or_else(|| {
        Failure::Model(Error::Config(format!(
            "{}: no sweep section in file",
            config.path.display()
        )))
    })?;
    if let Some(v) = cli.pmin_variant {
        cfg.base.receiver = cfg.base.receiver.with_variant(v.into());
    }
    let rows = sweep(&cfg)?;
    let mut r = Report::new("sweep");
    r.push("pmin_variant", cfg.base.receiver.pmin_variant().as_str(), "");
    r.push(
        "axes",
        cfg.axes
            .iter()
            .map(|a| a.parameter.column())
            .collect::<Vec<_>>()
            .join(" "),
        "",
    );
    r.push("rows", rows.len(), "");
    let mut columns: Vec<String> = cfg.axes.iter().map(|a| a.parameter.column().to_string()).collect();
    columns.extend(
        [
            "p_received_W",
            "p_min_W",
            "snr",
            "detectable",
            "eta_tx",
            "eta_rx",
            "coupling",
            "zero_phonon_tx",
        ]
        .map(String::from),
    );
    r.table = Some(Table {
        name: "rows",
        columns,
        rows: rows
            .iter()
            .map(|row| {
                let s = &row.summary;
                let mut cells: Vec<Cell> = row.values.iter().map(|&v| v.into()).collect();
                cells.extend([
                    s.p_received_w.into(),
                    s.p_min_w.into(),
                    s.snr.into(),
                    s.detectable.into(),
                    s.eta_tx.into(),
                    s.eta_rx.into(),
                    s.coupling.into(),
                    s.zero_phonon_tx.into(),
                ]);
                cells
            })
            .collect(),
    });
    r.tabular_csv = true;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("gravlink").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ratio_defaults_to_electron() {
        let (code, out, _) = call(&["ratio", "--q", "e", "--m", "electron"]);
        assert_eq!(code, 0);
        assert!(out.contains("(2.4e-43)"), "{out}");
    }

    #[test]
    fn critical_mass_table_and_json() {
        let (code, out, _) = call(&["critical-mass", "--electrons", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("1.9 \u{3bc}g"), "{out}");
        let (_, out, _) = call(&["critical-mass", "--electrons", "1", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let m: f64 = v["result"]["critical_mass_kg"].to_string().parse().unwrap();
        assert!((m - 1.8592090938e-9).abs() < 1e-18);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["ratio", "--m", "3 parsecs"]).0, EXIT_USAGE);
        assert_eq!(call(&["ratio", "--q", "1mm"]).0, EXIT_USAGE);
        assert_eq!(call(&["ratio", "--q", "0 C"]).0, EXIT_CONFIG);
        let (code, _, err) = call(&["link", "--config", "/nonexistent/scenario.json"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("/nonexistent/scenario.json"), "{err}");
        assert_eq!(call(&["link"]).0, EXIT_USAGE);
        assert_eq!(call(&["--version"]).0, EXIT_OK);
    }

    #[test]
    fn drop_flags_with_units() {
        let (code, out, err) = call(&[
            "drop",
            "--mass",
            "1.9ug",
            "--radius",
            "0.15mm",
            "--temp",
            "10mK",
            "--b-field",
            "1T",
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("zero_phonon_probability"));
        let (code, _, err) = call(&["drop", "--mass", "1.9ug", "--radius", "0.15mm", "--temp", "10mK"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--b-field"));
    }

    #[test]
    fn orbit_csv_columns() {
        let (code, out, err) = call(&[
            "orbit",
            "--mass",
            "1e-6 kg",
            "--charge",
            "1 C",
            "--central-mass",
            "6.7e18 kg",
            "--r0",
            "1 m",
            "--t-end",
            "1 s",
            "--r-min",
            "0.1 m",
            "--samples",
            "10",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0, "{err}");
        let header = out.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(header, "t_s,r_m,E_rad_em_J,E_rad_gr_J");
        assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 12);
    }

    #[test]
    fn orbit_bad_tolerance_is_domain_error() {
        let (code, _, _) = call(&[
            "orbit",
            "--mass",
            "1e-6 kg",
            "--charge",
            "1 C",
            "--central-mass",
            "earth",
            "--r0",
            "7000 km",
            "--t-end",
            "1 s",
            "--r-min",
            "1 km",
            "--tol",
            "0.5",
        ]);
        assert_eq!(code, EXIT_CONFIG);
    }

    #[test]
    fn step_limit_is_numerical_failure() {
        let (code, _, err) = call(&[
            "orbit",
            "--mass",
            "1e-6 kg",
            "--charge",
            "1 C",
            "--central-mass",
            "6.7e18 kg",
            "--r0",
            "1 m",
            "--t-end",
            "1 s",
            "--r-min",
            "0.1 m",
            "--max-steps",
            "3",
        ]);
        assert_eq!(code, EXIT_NUMERICAL, "{err}");
    }
}

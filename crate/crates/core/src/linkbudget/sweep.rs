//! Dense grid sweeps over a link scenario.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{hertz_link, LinkReport, ReceiverSpec, SourceSpec};
use crate::error::{Error, Result};
use crate::transducer::{cyclotron_gap, zero_phonon_probability, DropSpec, TransducerPair};
use crate::units::{Dimension, Quantity};

/// Everything `hertz_link` needs.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkScenario {
    pub source: SourceSpec,
    pub tx: TransducerPair,
    pub rx_pair: TransducerPair,
    pub distance: Quantity,
    pub receiver: ReceiverSpec,
    pub directivity: f64,
}

impl LinkScenario {
    pub fn evaluate(&self) -> Result<LinkReport> {
        hertz_link(
            &self.source,
            &self.tx,
            &self.rx_pair,
            self.distance,
            &self.receiver,
            self.directivity,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// Mass of every drop in both pairs.
    DropMass,
    /// Temperature of every drop.
    Temperature,
    /// Magnetic field at every drop.
    BField,
    /// Drop separation within both pairs.
    Separation,
    /// Transmitter-to-receiver distance.
    Distance,
    NoiseTemperature,
    Bandwidth,
    IntegrationTime,
    SourcePower,
    ModeOverlap,
    Directivity,
}

impl SweepParameter {
    pub fn dimension(self) -> Dimension {
        match self {
            SweepParameter::DropMass => Dimension::MASS,
            SweepParameter::Temperature | SweepParameter::NoiseTemperature => Dimension::TEMPERATURE,
            SweepParameter::BField => Dimension::FLUX_DENSITY,
            SweepParameter::Separation | SweepParameter::Distance => Dimension::LENGTH,
            SweepParameter::Bandwidth => Dimension::FREQUENCY,
            SweepParameter::IntegrationTime => Dimension::TIME,
            SweepParameter::SourcePower => Dimension::POWER,
            SweepParameter::ModeOverlap | SweepParameter::Directivity => Dimension::DIMENSIONLESS,
        }
    }

    /// Column name with its SI unit suffix.
    pub fn column(self) -> &'static str {
        match self {
            SweepParameter::DropMass => "drop_mass_kg",
            SweepParameter::Temperature => "temperature_K",
            SweepParameter::BField => "b_field_T",
            SweepParameter::Separation => "separation_m",
            SweepParameter::Distance => "distance_m",
            SweepParameter::NoiseTemperature => "t_noise_K",
            SweepParameter::Bandwidth => "bandwidth_Hz",
            SweepParameter::IntegrationTime => "integration_time_s",
            SweepParameter::SourcePower => "source_power_W",
            SweepParameter::ModeOverlap => "mode_overlap",
            SweepParameter::Directivity => "directivity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepScale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub parameter: SweepParameter,
    pub from: Quantity,
    pub to: Quantity,
    pub steps: usize,
    pub scale: SweepScale,
}

impl SweepAxis {
    fn validate(&self) -> Result<()> {
        let name = self.parameter.column();
        let dim = self.parameter.dimension();
        let lo = self.from.require(dim, name)?;
        let hi = self.to.require(dim, name)?;
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::Config(format!("sweep axis {name}: bounds must be finite")));
        }
        if self.steps < 1 {
            return Err(Error::Config(format!("sweep axis {name}: steps must be >= 1")));
        }
        if self.scale == SweepScale::Log && !(lo > 0.0 && hi > 0.0) {
            return Err(Error::Config(format!(
                "sweep axis {name}: log scale needs positive bounds"
            )));
        }
        Ok(())
    }

    /// Grid values in SI units.
    pub fn values(&self) -> Vec<f64> {
        let (lo, hi) = (self.from.magnitude(), self.to.magnitude());
        if self.steps == 1 {
            return vec![lo];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i == 0 {
                    return lo;
                }
                if i == self.steps - 1 {
                    return hi;
                }
                let f = i as f64 / last;
                match self.scale {
                    SweepScale::Linear => lo + f * (hi - lo),
                    SweepScale::Log => (lo.ln() + f * (hi.ln() - lo.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub base: LinkScenario,
    pub axes: Vec<SweepAxis>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkSummary {
    pub p_received_w: f64,
    pub p_min_w: f64,
    pub snr: f64,
    pub detectable: bool,
    pub eta_tx: f64,
    pub eta_rx: f64,
    pub coupling: f64,
    /// Zero-phonon probability of the transmitting drops (0 when B = 0).
    pub zero_phonon_tx: f64,
}

impl LinkSummary {
    fn from_report(report: &LinkReport, tx_drop: &DropSpec) -> Result<Self> {
        let zero_phonon_tx = if tx_drop.b_field().magnitude() > 0.0 {
            zero_phonon_probability(cyclotron_gap(tx_drop.b_field())?, tx_drop.temperature())?
        } else {
            0.0
        };
        Ok(LinkSummary {
            p_received_w: report.p_received.magnitude(),
            p_min_w: report.p_min.magnitude(),
            snr: report.snr,
            detectable: report.detectable,
            eta_tx: report.eta_tx,
            eta_rx: report.eta_rx,
            coupling: report.coupling,
            zero_phonon_tx,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    /// One SI value per axis, in axis order.
    pub values: Vec<f64>,
    pub summary: LinkSummary,
}

fn map_drops(pair: &TransducerPair, f: impl Fn(&DropSpec) -> Result<DropSpec>) -> Result<TransducerPair> {
    pair.with_drops(f(pair.drop_a())?, f(pair.drop_b())?)
}

fn rebuild_drop(d: &DropSpec, mass: Quantity, temperature: Quantity, b_field: Quantity) -> Result<DropSpec> {
    DropSpec::with_molar_mass(mass, d.n_electrons(), d.radius(), temperature, b_field, d.molar_mass())
}

fn apply(base: &LinkScenario, parameter: SweepParameter, value: f64) -> Result<LinkScenario> {
    let mut s = base.clone();
    let v = Quantity::new(value, parameter.dimension())?;
    match parameter {
        SweepParameter::DropMass => {
            let f = |d: &DropSpec| d.with_mass(v);
            s.tx = map_drops(&s.tx, f)?;
            s.rx_pair = map_drops(&s.rx_pair, f)?;
        }
        SweepParameter::Temperature => {
            let f = |d: &DropSpec| rebuild_drop(d, d.mass(), v, d.b_field());
            s.tx = map_drops(&s.tx, f)?;
            s.rx_pair = map_drops(&s.rx_pair, f)?;
        }
        SweepParameter::BField => {
            let f = |d: &DropSpec| rebuild_drop(d, d.mass(), d.temperature(), v);
            s.tx = map_drops(&s.tx, f)?;
            s.rx_pair = map_drops(&s.rx_pair, f)?;
        }
        SweepParameter::Separation => {
            s.tx = s.tx.with_separation(v)?;
            s.rx_pair = s.rx_pair.with_separation(v)?;
        }
        SweepParameter::Distance => s.distance = v,
        SweepParameter::NoiseTemperature => {
            let r = &s.receiver;
            s.receiver = rebuild_receiver(r, v, r.bandwidth(), r.integration_time())?;
        }
        SweepParameter::Bandwidth => {
            let r = &s.receiver;
            s.receiver = rebuild_receiver(r, r.t_noise(), v, r.integration_time())?;
        }
        SweepParameter::IntegrationTime => {
            let r = &s.receiver;
            s.receiver = rebuild_receiver(r, r.t_noise(), r.bandwidth(), v)?;
        }
        SweepParameter::SourcePower => {
            s.source = SourceSpec::new(v, s.source.frequency(), s.source.mode_overlap())?;
        }
        SweepParameter::ModeOverlap => {
            s.source = SourceSpec::new(s.source.power(), s.source.frequency(), value)?;
        }
        SweepParameter::Directivity => {
            if value.is_nan() || value <= 0.0 {
                return Err(Error::domain("directivity must be > 0"));
            }
            s.directivity = value;
        }
    }
    Ok(s)
}

fn rebuild_receiver(r: &ReceiverSpec, t: Quantity, bw: Quantity, tau: Quantity) -> Result<ReceiverSpec> {
    let mut out = ReceiverSpec::new(t, bw, tau, r.pmin_variant())?;
    if let Some(f) = r.center_frequency() {
        out = out.with_center_frequency(f)?;
    }
    Ok(out)
}

/// Evaluates every grid point. Rows come back in lexicographic order of the
/// axis indices, first axis slowest, regardless of evaluation order.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if config.axes.is_empty() {
        return Err(Error::Config("sweep needs at least one axis".into()));
    }
    for axis in &config.axes {
        axis.validate()?;
    }
    let grids: Vec<Vec<f64>> = config.axes.iter().map(SweepAxis::values).collect();
    let total: usize = grids.iter().map(Vec::len).product();

    (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut rem = flat;
            let mut values = vec![0.0; grids.len()];
            for (k, grid) in grids.iter().enumerate().rev() {
                values[k] = grid[rem % grid.len()];
                rem /= grid.len();
            }
            let mut scenario = config.base.clone();
            for (axis, v) in config.axes.iter().zip(&values) {
                scenario = apply(&scenario, axis.parameter, *v)?;
            }
            let report = scenario.evaluate()?;
            let summary = LinkSummary::from_report(&report, scenario.tx.drop_a())?;
            Ok(SweepRow { values, summary })
        })
        .collect()
}

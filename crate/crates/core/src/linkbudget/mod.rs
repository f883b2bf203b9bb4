//! The Hertz-like link: microwave drive into a transmitting drop pair,
//! gravitational radiation across free space (through the Faraday cages),
//! reconversion in a receiving pair, and detection against the radiometer
//! noise floor.

mod sweep;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transducer::{conversion_efficiency, geometric_cross_section, TransducerPair};
use crate::units::{constants, Dimension, Quantity};

pub use sweep::{sweep, LinkScenario, LinkSummary, SweepAxis, SweepConfig, SweepParameter, SweepRow, SweepScale};

/// GR transmission of a Faraday cage. Gravitational waves pass through
/// classical matter; the cages only block the EM leakage path.
pub const FARADAY_GR_TRANSMISSION: f64 = 1.0;
pub const FARADAY_EM_LEAKAGE: f64 = 0.0;

pub const DEFAULT_DIRECTIVITY: f64 = 1.0;
pub const DEFAULT_MODE_OVERLAP: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceSpec {
    power: Quantity,
    frequency: Quantity,
    mode_overlap: f64,
}

impl SourceSpec {
    pub fn new(power: Quantity, frequency: Quantity, mode_overlap: f64) -> Result<Self> {
        let p = power.require(Dimension::POWER, "source power")?;
        let f = frequency.require(Dimension::FREQUENCY, "source frequency")?;
        if p < 0.0 {
            return Err(Error::domain("source power must be >= 0"));
        }
        if f <= 0.0 {
            return Err(Error::domain("source frequency must be > 0"));
        }
        if !(mode_overlap > 0.0 && mode_overlap <= 1.0) {
            return Err(Error::domain(format!(
                "mode_overlap must be in (0, 1], got {mode_overlap}"
            )));
        }
        Ok(SourceSpec {
            power,
            frequency,
            mode_overlap,
        })
    }

    pub fn power(&self) -> Quantity {
        self.power
    }

    pub fn frequency(&self) -> Quantity {
        self.frequency
    }

    pub fn mode_overlap(&self) -> f64 {
        self.mode_overlap
    }
}

/// Which form of the radiometer floor to use.
///
/// `AsPrinted` is k_B T dnu / sqrt(tau dnu). `PerRootBandwidth` is
/// k_B T (1 Hz) / sqrt(tau dnu), the form that reproduces 1.3e-25 W at
/// 300 K, 1 GHz, 1 s. The two differ by dnu/(1 Hz).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PminVariant {
    #[default]
    #[serde(rename = "printed")]
    AsPrinted,
    #[serde(rename = "root-bw")]
    PerRootBandwidth,
}

impl PminVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            PminVariant::AsPrinted => "printed",
            PminVariant::PerRootBandwidth => "root-bw",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverSpec {
    t_noise: Quantity,
    bandwidth: Quantity,
    integration_time: Quantity,
    pmin_variant: PminVariant,
    center_frequency: Option<Quantity>,
}

impl ReceiverSpec {
    pub fn new(
        t_noise: Quantity,
        bandwidth: Quantity,
        integration_time: Quantity,
        pmin_variant: PminVariant,
    ) -> Result<Self> {
        let t = t_noise.require(Dimension::TEMPERATURE, "receiver t_noise")?;
        let b = bandwidth.require(Dimension::FREQUENCY, "receiver bandwidth")?;
        let tau = integration_time.require(Dimension::TIME, "receiver integration_time")?;
        if !(t > 0.0 && b > 0.0 && tau > 0.0) {
            return Err(Error::domain(
                "receiver t_noise, bandwidth and integration_time must be > 0",
            ));
        }
        Ok(ReceiverSpec {
            t_noise,
            bandwidth,
            integration_time,
            pmin_variant,
            center_frequency: None,
        })
    }

    pub fn with_center_frequency(mut self, f: Quantity) -> Result<Self> {
        if f.require(Dimension::FREQUENCY, "receiver center_frequency")? <= 0.0 {
            return Err(Error::domain("receiver center_frequency must be > 0"));
        }
        self.center_frequency = Some(f);
        Ok(self)
    }

    pub fn with_variant(mut self, variant: PminVariant) -> Self {
        self.pmin_variant = variant;
        self
    }

    pub fn t_noise(&self) -> Quantity {
        self.t_noise
    }

    pub fn bandwidth(&self) -> Quantity {
        self.bandwidth
    }

    pub fn integration_time(&self) -> Quantity {
        self.integration_time
    }

    pub fn pmin_variant(&self) -> PminVariant {
        self.pmin_variant
    }

    pub fn center_frequency(&self) -> Option<Quantity> {
        self.center_frequency
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stage {
    pub label: &'static str,
    /// Multiplicative factor applied at this stage.
    pub factor: f64,
    /// Power after this stage.
    pub power: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkReport {
    pub stages: Vec<Stage>,
    pub p_received: Quantity,
    /// Floor used for the SNR (the receiver's selected variant).
    pub p_min: Quantity,
    pub pmin_variant: PminVariant,
    pub p_min_printed: Quantity,
    pub p_min_root_bw: Quantity,
    pub snr: f64,
    pub detectable: bool,
    pub eta_tx: f64,
    pub eta_rx: f64,
    pub coupling: f64,
    pub sigma_rx: Quantity,
}

/// Z_G = 16 pi G / c
pub fn gravity_wave_impedance() -> Quantity {
    let k = constants();
    16.0 * PI * k.g / k.c
}

pub fn min_detectable_power(rx: &ReceiverSpec) -> Result<Quantity> {
    min_detectable_power_variant(rx, rx.pmin_variant)
}

pub fn min_detectable_power_variant(rx: &ReceiverSpec, variant: PminVariant) -> Result<Quantity> {
    let k = constants();
    let root = (rx.integration_time * rx.bandwidth).sqrt()?;
    let thermal = k.k_b * rx.t_noise;
    let p = match variant {
        PminVariant::AsPrinted => thermal * rx.bandwidth / root,
        PminVariant::PerRootBandwidth => thermal * Quantity::new(1.0, Dimension::FREQUENCY)? / root,
    };
    p.ensure(Dimension::POWER, "min_detectable_power")
}

/// D sigma / (4 pi d^2), capped at 1.
pub fn free_space_coupling(sigma_rx: Quantity, distance: Quantity, directivity: f64) -> Result<f64> {
    let sigma = sigma_rx.require(Dimension::AREA, "coupling sigma_rx")?;
    let d = distance.require(Dimension::LENGTH, "coupling distance")?;
    if d <= 0.0 {
        return Err(Error::domain("link distance must be > 0"));
    }
    if sigma < 0.0 {
        return Err(Error::domain("receiver cross-section must be >= 0"));
    }
    if !(directivity > 0.0 && directivity.is_finite()) {
        return Err(Error::domain("directivity must be > 0"));
    }
    let g = (directivity * sigma_rx / (4.0 * PI * distance.powi(2))).value("free_space_coupling")?;
    Ok(g.min(1.0))
}

pub fn hertz_link(
    src: &SourceSpec,
    tx: &TransducerPair,
    rx_pair: &TransducerPair,
    distance: Quantity,
    rx: &ReceiverSpec,
    directivity: f64,
) -> Result<LinkReport> {
    let eta_tx = conversion_efficiency(tx)?;
    let eta_rx = conversion_efficiency(rx_pair)?;
    let sigma_rx = geometric_cross_section(rx_pair)?;
    let coupling = free_space_coupling(sigma_rx, distance, directivity)?;

    let chain: [(&'static str, f64); 6] = [
        ("source", 1.0),
        ("mode_overlap", src.mode_overlap),
        ("tx_conversion", eta_tx),
        ("faraday_cages", FARADAY_GR_TRANSMISSION),
        ("free_space", coupling),
        ("rx_conversion", eta_rx),
    ];
    let mut stages = Vec::with_capacity(chain.len());
    let mut power = src.power;
    for (label, factor) in chain {
        power = (power * factor).ensure(Dimension::POWER, label)?;
        stages.push(Stage { label, factor, power });
    }

    let p_min_printed = min_detectable_power_variant(rx, PminVariant::AsPrinted)?;
    let p_min_root_bw = min_detectable_power_variant(rx, PminVariant::PerRootBandwidth)?;
    let p_min = match rx.pmin_variant {
        PminVariant::AsPrinted => p_min_printed,
        PminVariant::PerRootBandwidth => p_min_root_bw,
    };
    let snr = (power / p_min).value("snr")?;
    Ok(LinkReport {
        stages,
        p_received: power,
        p_min,
        pmin_variant: rx.pmin_variant,
        p_min_printed,
        p_min_root_bw,
        snr,
        detectable: snr >= 1.0,
        eta_tx,
        eta_rx,
        coupling,
        sigma_rx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transducer::{critical_mass, DropSpec};
    use crate::units::parse_quantity;

    fn q(s: &str) -> Quantity {
        parse_quantity(s).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn receiver(variant: PminVariant) -> ReceiverSpec {
        ReceiverSpec::new(q("300K"), q("1GHz"), q("1s"), variant).unwrap()
    }

    fn critical_pair() -> TransducerPair {
        let d = DropSpec::new(critical_mass(1).unwrap(), 1, q("0.15mm"), q("10mK"), q("1T")).unwrap();
        TransducerPair::symmetric(d, q("2.5cm"), q("12GHz")).unwrap()
    }

    #[test]
    fn impedance() {
        let z = gravity_wave_impedance();
        assert!(rel(z.magnitude(), 1.1e-17) < 0.05);
        assert!(rel(z.magnitude(), 1.119_063_874_400_968_6e-17) < 1e-12);
        assert_eq!(z.dim().exponents(), [-1, 2, -1, 0, 0, 0]);
    }

    #[test]
    fn radiometer_floor() {
        let root = min_detectable_power(&receiver(PminVariant::PerRootBandwidth)).unwrap();
        assert_eq!(root.dim(), Dimension::POWER);
        assert!(rel(root.magnitude(), 1.3e-25) < 0.05);
        assert!(rel(root.magnitude(), 1.309_798_646_770_144e-25) < 1e-12);
        let printed = min_detectable_power(&receiver(PminVariant::AsPrinted)).unwrap();
        assert!(rel(printed.magnitude(), 1.309_798_646_770_144e-16) < 1e-12);
        assert!(rel(printed.magnitude() / root.magnitude(), 1e9) < 1e-12);

        let long = ReceiverSpec::new(q("300K"), q("1GHz"), q("4s"), PminVariant::AsPrinted).unwrap();
        for v in [PminVariant::AsPrinted, PminVariant::PerRootBandwidth] {
            let a = min_detectable_power_variant(&receiver(v), v).unwrap().magnitude();
            let b = min_detectable_power_variant(&long, v).unwrap().magnitude();
            assert!(rel(b, a / 2.0) < 1e-15);
        }
    }

    #[test]
    fn coupling_values() {
        let d = q("1m");
        let full = Quantity::new(4.0 * PI, Dimension::AREA).unwrap();
        assert_eq!(free_space_coupling(full, d, 1.0).unwrap(), 1.0);
        assert_eq!(free_space_coupling(full * 10.0, d, 1.0).unwrap(), 1.0);
        let g = free_space_coupling(q("6.28e-6m2"), d, 1.0).unwrap();
        assert!(rel(g, 4.997_465_213_085_514e-7) < 1e-12);
        let g2 = free_space_coupling(q("6.28e-6m2"), q("2m"), 1.0).unwrap();
        assert!(rel(g2, g / 4.0) < 1e-15);
        assert!(free_space_coupling(full, q("0m"), 1.0).is_err());
        assert!(free_space_coupling(full, d, 0.0).is_err());
    }

    #[test]
    fn critical_link_chain() {
        let src = SourceSpec::new(q("1W"), q("12GHz"), 0.8).unwrap();
        let pair = critical_pair();
        let rx = receiver(PminVariant::PerRootBandwidth);
        let report = hertz_link(&src, &pair, &pair, q("1m"), &rx, 1.0).unwrap();
        let expected = 0.8 * 0.25 * report.coupling;
        assert!(rel(report.p_received.magnitude(), expected) < 1e-12);
        assert_eq!(report.stages.len(), 6);
        let product: f64 = report.stages.iter().map(|s| s.factor).product();
        assert!(rel(report.p_received.magnitude(), product) < 1e-14);
        for w in report.stages.windows(2) {
            assert!(w[1].power.magnitude() <= w[0].power.magnitude());
        }
        assert_eq!(report.detectable, report.snr >= 1.0);
    }

    #[test]
    fn zero_input() {
        let src = SourceSpec::new(q("0W"), q("12GHz"), 1.0).unwrap();
        let pair = critical_pair();
        let report = hertz_link(&src, &pair, &pair, q("1m"), &receiver(PminVariant::AsPrinted), 1.0).unwrap();
        assert_eq!(report.p_received.magnitude(), 0.0);
        assert!(!report.detectable);
    }

    #[test]
    fn swap_is_symmetric() {
        let src = SourceSpec::new(q("1W"), q("12GHz"), 1.0).unwrap();
        let a = critical_pair();
        let d = DropSpec::new(q("5ug"), 2, q("0.15mm"), q("10mK"), q("1T")).unwrap();
        let b = TransducerPair::symmetric(d, q("2.5cm"), q("12GHz")).unwrap();
        let rx = receiver(PminVariant::AsPrinted);
        let ab = hertz_link(&src, &a, &b, q("1m"), &rx, 1.0).unwrap();
        let ba = hertz_link(&src, &b, &a, q("1m"), &rx, 1.0).unwrap();
        // equal radii, so coupling is unchanged and the efficiencies commute
        assert!(rel(ab.p_received.magnitude(), ba.p_received.magnitude()) < 1e-15);
    }

    #[test]
    fn spec_validation() {
        assert!(SourceSpec::new(q("-1W"), q("1GHz"), 1.0).is_err());
        assert!(SourceSpec::new(q("1W"), q("0GHz"), 1.0).is_err());
        assert!(SourceSpec::new(q("1W"), q("1GHz"), 1.5).is_err());
        assert!(SourceSpec::new(q("1W"), q("1GHz"), 0.0).is_err());
        assert!(ReceiverSpec::new(q("0K"), q("1GHz"), q("1s"), PminVariant::AsPrinted).is_err());
        assert!(ReceiverSpec::new(q("1K"), q("1GHz"), q("1m"), PminVariant::AsPrinted).is_err());
    }
}

//! JSON configuration files.
//!
//! Every dimensional field is an object `{"value": <number>, "unit": "<symbol>"}`.
//! Field-level problems (unknown unit, wrong dimension, sign) are reported
//! with the field path and the line/column in the file.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::{self, Deserializer};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linkbudget::{
    LinkScenario, PminVariant, ReceiverSpec, SourceSpec, SweepAxis, SweepConfig, SweepParameter, SweepScale,
    DEFAULT_DIRECTIVITY, DEFAULT_MODE_OVERLAP,
};
use crate::orbitsim::{CentralBody, LossChannels, OrbitBody};
use crate::radiation::DEFAULT_KAPPA;
use crate::transducer::{DropSpec, TransducerPair};
use crate::units::{constants, describe, parse_unit, Dimension, Quantity};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitValue {
    value: f64,
    unit: String,
}

#[derive(Clone, Copy)]
enum Sign {
    Any,
    NonNegative,
    Positive,
}

fn unit_value<'de, D>(d: D, dim: Dimension, sign: Sign) -> std::result::Result<Quantity, D::Error>
where
    D: Deserializer<'de>,
{
    let raw = UnitValue::deserialize(d)?;
    let (scale, found) = parse_unit(&raw.unit).map_err(|_| {
        de::Error::custom(format!(
            "unknown unit \"{}\", expected a unit of {}",
            raw.unit,
            describe(dim)
        ))
    })?;
    if found != dim {
        return Err(de::Error::custom(format!(
            "unit \"{}\" has dimension {found}, expected a unit of {}",
            raw.unit,
            describe(dim)
        )));
    }
    let v = raw.value * scale;
    if !v.is_finite() {
        return Err(de::Error::custom("value must be finite"));
    }
    match sign {
        Sign::Positive if v <= 0.0 => Err(de::Error::custom(format!("value must be > 0, got {}", raw.value))),
        Sign::NonNegative if v < 0.0 => Err(de::Error::custom(format!("value must be >= 0, got {}", raw.value))),
        _ => Ok(Quantity::raw(v, dim)),
    }
}

macro_rules! unit_field {
    ($name:ident, $dim:expr, $sign:expr) => {
        fn $name<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Quantity, D::Error> {
            unit_value(d, $dim, $sign)
        }
    };
}

macro_rules! opt_unit_field {
    ($name:ident, $dim:expr, $sign:expr) => {
        fn $name<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Quantity>, D::Error> {
            unit_value(d, $dim, $sign).map(Some)
        }
    };
}

unit_field!(mass_pos, Dimension::MASS, Sign::Positive);
unit_field!(length_pos, Dimension::LENGTH, Sign::Positive);
unit_field!(temperature_pos, Dimension::TEMPERATURE, Sign::Positive);
unit_field!(flux_nonneg, Dimension::FLUX_DENSITY, Sign::NonNegative);
unit_field!(frequency_pos, Dimension::FREQUENCY, Sign::Positive);
unit_field!(power_nonneg, Dimension::POWER, Sign::NonNegative);
unit_field!(time_pos, Dimension::TIME, Sign::Positive);
unit_field!(charge_any, Dimension::CHARGE, Sign::Any);
unit_field!(mass_nonneg, Dimension::MASS, Sign::NonNegative);
opt_unit_field!(opt_molar_mass_pos, Dimension::MOLAR_MASS, Sign::Positive);
opt_unit_field!(opt_frequency_pos, Dimension::FREQUENCY, Sign::Positive);
opt_unit_field!(opt_dimensionless_nonneg, Dimension::DIMENSIONLESS, Sign::NonNegative);

fn one() -> u32 {
    1
}

fn default_kappa() -> f64 {
    DEFAULT_KAPPA
}

fn default_directivity() -> f64 {
    DEFAULT_DIRECTIVITY
}

fn default_overlap() -> f64 {
    DEFAULT_MODE_OVERLAP
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DropConfig {
    #[serde(deserialize_with = "mass_pos")]
    pub mass: Quantity,
    #[serde(default = "one")]
    pub electrons: u32,
    #[serde(deserialize_with = "length_pos")]
    pub radius: Quantity,
    #[serde(deserialize_with = "temperature_pos")]
    pub temperature: Quantity,
    #[serde(deserialize_with = "flux_nonneg")]
    pub b_field: Quantity,
    #[serde(default, deserialize_with = "opt_molar_mass_pos")]
    pub molar_mass: Option<Quantity>,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
}

impl DropConfig {
    pub fn to_spec(&self) -> Result<DropSpec> {
        let molar = self.molar_mass.unwrap_or_else(|| constants().helium4_molar_mass());
        DropSpec::with_molar_mass(
            self.mass,
            self.electrons,
            self.radius,
            self.temperature,
            self.b_field,
            molar,
        )
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairConfig {
    drop_a: DropConfig,
    #[serde(default)]
    drop_b: Option<DropConfig>,
    #[serde(deserialize_with = "length_pos")]
    separation: Quantity,
    #[serde(default, deserialize_with = "opt_frequency_pos")]
    frequency: Option<Quantity>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceConfig {
    #[serde(deserialize_with = "power_nonneg")]
    power: Quantity,
    #[serde(deserialize_with = "frequency_pos")]
    frequency: Quantity,
    #[serde(default = "default_overlap")]
    mode_overlap: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReceiverConfig {
    #[serde(deserialize_with = "temperature_pos")]
    t_noise: Quantity,
    #[serde(deserialize_with = "frequency_pos")]
    bandwidth: Quantity,
    #[serde(deserialize_with = "time_pos")]
    integration_time: Quantity,
    #[serde(default)]
    pmin_variant: PminVariant,
    #[serde(default, deserialize_with = "opt_frequency_pos")]
    center_frequency: Option<Quantity>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisConfig {
    parameter: SweepParameter,
    from: UnitValue,
    to: UnitValue,
    steps: usize,
    #[serde(default)]
    scale: SweepScale,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    axes: Vec<AxisConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelsConfig {
    #[default]
    Both,
    EmOnly,
    GrOnly,
}

impl From<ChannelsConfig> for LossChannels {
    fn from(c: ChannelsConfig) -> Self {
        match c {
            ChannelsConfig::Both => LossChannels::Both,
            ChannelsConfig::EmOnly => LossChannels::EmOnly,
            ChannelsConfig::GrOnly => LossChannels::GrOnly,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitConfig {
    #[serde(deserialize_with = "mass_pos")]
    pub mass: Quantity,
    #[serde(deserialize_with = "charge_any")]
    pub charge: Quantity,
    #[serde(deserialize_with = "mass_nonneg")]
    pub central_mass: Quantity,
    #[serde(deserialize_with = "length_pos")]
    pub r0: Quantity,
    #[serde(deserialize_with = "time_pos")]
    pub t_end: Quantity,
    #[serde(deserialize_with = "length_pos")]
    pub r_min: Quantity,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default)]
    pub rel_tol: Option<f64>,
    #[serde(default)]
    pub channels: ChannelsConfig,
}

impl OrbitConfig {
    pub fn bodies(&self) -> Result<(OrbitBody, CentralBody)> {
        Ok((
            OrbitBody::new(self.mass, self.charge, self.kappa)?,
            CentralBody::new(self.central_mass)?,
        ))
    }
}

/// Free-form annotation carried through to reports. Never used in a model.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceNote {
    pub label: String,
    #[serde(default, deserialize_with = "opt_frequency_pos")]
    pub frequency: Option<Quantity>,
    /// Measured upper bound on the conversion efficiency, dimensionless.
    #[serde(default, deserialize_with = "opt_dimensionless_nonneg")]
    pub efficiency_cap: Option<Quantity>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    description: Option<String>,
    #[serde(default)]
    reference: Option<ReferenceNote>,
    #[serde(default)]
    drop: Option<DropConfig>,
    #[serde(default)]
    source: Option<SourceConfig>,
    #[serde(default)]
    tx: Option<PairConfig>,
    #[serde(default)]
    rx_pair: Option<PairConfig>,
    #[serde(default, deserialize_with = "opt_length_pos")]
    distance: Option<Quantity>,
    #[serde(default)]
    receiver: Option<ReceiverConfig>,
    #[serde(default = "default_directivity")]
    directivity: f64,
    #[serde(default)]
    sweep: Option<SweepSection>,
    #[serde(default)]
    orbit: Option<OrbitConfig>,
}

opt_unit_field!(opt_length_pos, Dimension::LENGTH, Sign::Positive);

/// A fully validated configuration. Sections absent from the file are `None`.
#[derive(Debug, Clone)]
pub struct Config {
    pub path: PathBuf,
    pub description: Option<String>,
    pub reference: Option<ReferenceNote>,
    pub drop: Option<DropConfig>,
    pub link: Option<LinkScenario>,
    pub sweep: Option<SweepConfig>,
    pub orbit: Option<OrbitConfig>,
}

#[derive(Debug)]
pub struct ConfigError {
    pub path: PathBuf,
    pub field: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() || self.field == "." {
            write!(f, "{}: {}", self.path.display(), self.message)
        } else {
            write!(f, "{}: field `{}`: {}", self.path.display(), self.field, self.message)
        }
    }
}

pub fn load_config(path: &Path) -> Result<Config> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text, path)
}

pub fn parse_config(text: &str, path: &Path) -> Result<Config> {
    let mut de = serde_json::Deserializer::from_str(text);
    let file: ConfigFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let err = ConfigError {
            path: path.to_path_buf(),
            field,
            message: e.inner().to_string(),
        };
        Error::Config(err.to_string())
    })?;
    de.end()
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    build(file, path)
}

fn in_field<T>(path: &Path, field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| {
        Error::Config(
            ConfigError {
                path: path.to_path_buf(),
                field: field.to_string(),
                message: e.to_string(),
            }
            .to_string(),
        )
    })
}

fn pair_spec(
    cfg: &PairConfig,
    default_frequency: Option<Quantity>,
    path: &Path,
    field: &str,
) -> Result<TransducerPair> {
    let a = in_field(path, &format!("{field}.drop_a"), cfg.drop_a.to_spec())?;
    let b = match &cfg.drop_b {
        Some(b) => in_field(path, &format!("{field}.drop_b"), b.to_spec())?,
        None => a,
    };
    let frequency = cfg.frequency.or(default_frequency).ok_or_else(|| {
        Error::Config(format!(
            "{}: field `{field}.frequency`: required when no source section is given",
            path.display()
        ))
    })?;
    in_field(path, field, TransducerPair::new(a, b, cfg.separation, frequency))
}

fn axis_spec(cfg: &AxisConfig, path: &Path, index: usize) -> Result<SweepAxis> {
    let field = format!("sweep.axes[{index}]");
    let dim = cfg.parameter.dimension();
    let convert = |uv: &UnitValue, which: &str| -> Result<Quantity> {
        let (scale, found) = in_field(path, &format!("{field}.{which}.unit"), parse_unit(&uv.unit))?;
        if found != dim {
            return Err(Error::Config(format!(
                "{}: field `{field}.{which}`: unit \"{}\" has dimension {found}, expected a unit of {}",
                path.display(),
                uv.unit,
                describe(dim)
            )));
        }
        in_field(path, &format!("{field}.{which}"), Quantity::new(uv.value * scale, dim))
    };
    Ok(SweepAxis {
        parameter: cfg.parameter,
        from: convert(&cfg.from, "from")?,
        to: convert(&cfg.to, "to")?,
        steps: cfg.steps,
        scale: cfg.scale,
    })
}

fn build(file: ConfigFile, path: &Path) -> Result<Config> {
    if let Some(d) = &file.drop {
        in_field(path, "drop", d.to_spec())?;
    }
    if let Some(o) = &file.orbit {
        in_field(path, "orbit", o.bodies())?;
    }

    let source = match &file.source {
        Some(s) => Some(in_field(
            path,
            "source",
            SourceSpec::new(s.power, s.frequency, s.mode_overlap),
        )?),
        None => None,
    };
    let default_freq = source.map(|s| s.frequency());
    let tx = match &file.tx {
        Some(p) => Some(pair_spec(p, default_freq, path, "tx")?),
        None => None,
    };
    let rx_pair = match &file.rx_pair {
        Some(p) => Some(pair_spec(p, default_freq, path, "rx_pair")?),
        None => tx,
    };
    let receiver = match &file.receiver {
        Some(r) => {
            let mut spec = in_field(
                path,
                "receiver",
                ReceiverSpec::new(r.t_noise, r.bandwidth, r.integration_time, r.pmin_variant),
            )?;
            if let Some(f) = r.center_frequency {
                spec = in_field(path, "receiver.center_frequency", spec.with_center_frequency(f))?;
            }
            Some(spec)
        }
        None => None,
    };
    if !(file.directivity > 0.0 && file.directivity.is_finite()) {
        return Err(Error::Config(format!(
            "{}: field `directivity`: must be > 0, got {}",
            path.display(),
            file.directivity
        )));
    }

    let link = match (source, tx, rx_pair, file.distance, receiver) {
        (Some(source), Some(tx), Some(rx_pair), Some(distance), Some(receiver)) => Some(LinkScenario {
            source,
            tx,
            rx_pair,
            distance,
            receiver,
            directivity: file.directivity,
        }),
        (None, None, None, None, None) => None,
        _ => {
            return Err(Error::Config(format!(
                "{}: a link scenario needs all of `source`, `tx`, `distance` and `receiver`",
                path.display()
            )))
        }
    };

    let sweep = match &file.sweep {
        Some(s) => {
            let base = link.clone().ok_or_else(|| {
                Error::Config(format!(
                    "{}: field `sweep`: needs a complete link scenario",
                    path.display()
                ))
            })?;
            let axes = s
                .axes
                .iter()
                .enumerate()
                .map(|(i, a)| axis_spec(a, path, i))
                .collect::<Result<Vec<_>>>()?;
            Some(SweepConfig { base, axes })
        }
        None => None,
    };

    Ok(Config {
        path: path.to_path_buf(),
        description: file.description,
        reference: file.reference,
        drop: file.drop,
        link,
        sweep,
        orbit: file.orbit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Config> {
        parse_config(text, Path::new("test.json"))
    }

    const MINIMAL_DROP: &str = r#"{
  "drop": {
    "mass": {"value": 1.9, "unit": "ug"},
    "radius": {"value": 0.15, "unit": "mm"},
    "temperature": {"value": 10, "unit": "mK"},
    "b_field": {"value": 1, "unit": "T"}
  }
}"#;

    #[test]
    fn minimal_drop_gets_defaults() {
        let cfg = parse(MINIMAL_DROP).unwrap();
        let d = cfg.drop.unwrap();
        assert_eq!(d.electrons, 1);
        assert_eq!(d.kappa, 1.0);
        let spec = d.to_spec().unwrap();
        assert_eq!(spec.molar_mass(), constants().helium4_molar_mass());
        assert!((spec.mass().magnitude() - 1.9e-9).abs() < 1e-21);
        assert!(cfg.link.is_none());
    }

    #[test]
    fn negative_mass_names_field() {
        let text = MINIMAL_DROP.replace("1.9", "-1.9");
        let msg = parse(&text).unwrap_err().to_string();
        assert!(msg.contains("drop.mass"), "{msg}");
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn wrong_unit_names_expected_dimension() {
        let text = MINIMAL_DROP.replace("\"ug\"", "\"mm\"");
        let msg = parse(&text).unwrap_err().to_string();
        assert!(msg.contains("drop.mass"), "{msg}");
        assert!(msg.contains("unit of mass"), "{msg}");
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn unknown_unit_and_field() {
        let text = MINIMAL_DROP.replace("\"T\"", "\"gauss\"");
        let msg = parse(&text).unwrap_err().to_string();
        assert!(msg.contains("drop.b_field") && msg.contains("gauss"), "{msg}");
        let text = MINIMAL_DROP.replace("\"radius\"", "\"radios\"");
        assert!(parse(&text).is_err());
    }

    #[test]
    fn syntax_error_has_line() {
        let msg = parse("{\n  \"drop\": {,}\n}").unwrap_err().to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn incomplete_link_is_rejected() {
        let text = r#"{"distance": {"value": 1, "unit": "m"}}"#;
        assert!(parse(text).is_err());
    }
}

//! Unit strings accepted by configs and CLI flags.
//!
//! A fixed table of symbols with optional SI prefixes; no compound unit
//! grammar beyond what the table lists.

use super::constants::{constants, ELECTRON_MASS};
use super::{Dimension, Quantity};
use crate::error::{Error, Result};

struct UnitDef {
    symbol: &'static str,
    scale: f64,
    dim: Dimension,
    prefixable: bool,
}

const fn unit(symbol: &'static str, scale: f64, dim: Dimension, prefixable: bool) -> UnitDef {
    UnitDef {
        symbol,
        scale,
        dim,
        prefixable,
    }
}

const UNITS: &[UnitDef] = &[
    unit("g/mol", 1e-3, Dimension::MOLAR_MASS, false),
    unit("kg/mol", 1.0, Dimension::MOLAR_MASS, false),
    unit("m/s2", 1.0, Dimension::ACCELERATION, false),
    unit("m2", 1.0, Dimension::AREA, true),
    unit("Hz", 1.0, Dimension::FREQUENCY, true),
    unit("eV", super::constants::ELEMENTARY_CHARGE, Dimension::ENERGY, true),
    unit("min", 60.0, Dimension::TIME, false),
    unit("h", 3600.0, Dimension::TIME, false),
    unit("g", 1e-3, Dimension::MASS, true),
    unit("m", 1.0, Dimension::LENGTH, true),
    unit("s", 1.0, Dimension::TIME, true),
    unit("K", 1.0, Dimension::TEMPERATURE, true),
    unit("T", 1.0, Dimension::FLUX_DENSITY, true),
    unit("W", 1.0, Dimension::POWER, true),
    unit("J", 1.0, Dimension::ENERGY, true),
    unit("C", 1.0, Dimension::CHARGE, true),
    unit("A", 1.0, Dimension::CURRENT, true),
    unit("e", super::constants::ELEMENTARY_CHARGE, Dimension::CHARGE, false),
    unit("me", ELECTRON_MASS, Dimension::MASS, false),
    unit("1", 1.0, Dimension::DIMENSIONLESS, false),
];

const PREFIXES: &[(&str, f64)] = &[
    ("G", 1e9),
    ("M", 1e6),
    ("k", 1e3),
    ("c", 1e-2),
    ("m", 1e-3),
    ("u", 1e-6),
    ("\u{3bc}", 1e-6),
    ("\u{b5}", 1e-6),
    ("n", 1e-9),
    ("p", 1e-12),
    ("f", 1e-15),
];

/// Resolves a unit symbol to (scale to SI, dimension).
pub fn parse_unit(symbol: &str) -> Result<(f64, Dimension)> {
    let symbol = symbol.trim();
    if symbol.is_empty() {
        return Ok((1.0, Dimension::DIMENSIONLESS));
    }
    for u in UNITS {
        if u.symbol == symbol {
            return Ok((u.scale, u.dim));
        }
    }
    for (prefix, factor) in PREFIXES {
        if let Some(rest) = symbol.strip_prefix(prefix) {
            if let Some(u) = UNITS.iter().find(|u| u.prefixable && u.symbol == rest) {
                // area prefixes apply to the length before squaring
                let factor = if u.dim == Dimension::AREA {
                    factor * factor
                } else {
                    *factor
                };
                return Ok((factor * u.scale, u.dim));
            }
        }
    }
    Err(Error::Config(format!("unknown unit \"{symbol}\"")))
}

/// Converts a magnitude in `unit` to an SI quantity.
pub fn with_unit(value: f64, unit: &str) -> Result<Quantity> {
    let (scale, dim) = parse_unit(unit)?;
    Quantity::new(value * scale, dim)
}

/// Parses strings such as `10mK`, `1.9 ug`, `1e-3`, `2e` or `e`.
pub fn parse_quantity(text: &str) -> Result<Quantity> {
    let text = text.trim();
    let split = numeric_prefix_len(text);
    let (num, unit) = text.split_at(split);
    let unit = unit.trim();
    let value = if num.is_empty() {
        if unit.is_empty() {
            return Err(Error::Config("empty quantity".into()));
        }
        1.0
    } else {
        num.parse::<f64>()
            .map_err(|_| Error::Config(format!("cannot parse number in \"{text}\"")))?
    };
    with_unit(value, unit)
}

// Longest prefix that parses as a float; handles the `2e` (two electron
// charges) versus `2e-3` ambiguity by requiring digits after an exponent.
fn numeric_prefix_len(text: &str) -> usize {
    let mut best = 0;
    for (i, _) in text.char_indices().skip(1).chain(std::iter::once((text.len(), ' '))) {
        let head = &text[..i];
        if head.ends_with(['e', 'E']) {
            continue;
        }
        if head.parse::<f64>().is_ok() && !head.eq_ignore_ascii_case("inf") && !head.eq_ignore_ascii_case("nan") {
            best = i;
        }
    }
    best
}

/// Scale factor and dimension description used in error messages.
pub fn describe(dim: Dimension) -> &'static str {
    match dim {
        d if d == Dimension::MASS => "mass (e.g. \"ug\", \"kg\")",
        d if d == Dimension::LENGTH => "length (e.g. \"mm\", \"m\")",
        d if d == Dimension::TIME => "time (e.g. \"s\")",
        d if d == Dimension::TEMPERATURE => "temperature (e.g. \"mK\", \"K\")",
        d if d == Dimension::FLUX_DENSITY => "magnetic flux density (e.g. \"T\")",
        d if d == Dimension::FREQUENCY => "frequency (e.g. \"GHz\")",
        d if d == Dimension::POWER => "power (e.g. \"W\", \"mW\")",
        d if d == Dimension::CHARGE => "charge (e.g. \"e\", \"C\")",
        d if d == Dimension::MOLAR_MASS => "molar mass (e.g. \"g/mol\")",
        d if d == Dimension::AREA => "area (e.g. \"m2\")",
        d if d == Dimension::ENERGY => "energy (e.g. \"J\", \"eV\")",
        d if d == Dimension::DIMENSIONLESS => "dimensionless (\"1\")",
        _ => "a compatible unit",
    }
}

/// Named mass scales accepted wherever a mass is expected.
pub fn named_mass(name: &str) -> Option<Quantity> {
    match name {
        "electron" => Some(constants().m_e),
        "helium4" | "he4" => Some(constants().m_he4),
        "planck" => crate::transducer::planck_mass().ok(),
        "critical" => crate::transducer::critical_mass(1).ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        ((a - b) / b).abs() < 1e-12
    }

    #[test]
    fn prefixed_units() {
        let t = parse_quantity("10mK").unwrap();
        assert_eq!(t.dim(), Dimension::TEMPERATURE);
        assert!(close(t.magnitude(), 0.01));

        let m = parse_quantity("1.9 ug").unwrap();
        assert_eq!(m.dim(), Dimension::MASS);
        assert!(close(m.magnitude(), 1.9e-9));

        let m = parse_quantity("1.9\u{3bc}g").unwrap();
        assert!(close(m.magnitude(), 1.9e-9));

        let f = parse_quantity("12GHz").unwrap();
        assert!(close(f.magnitude(), 12e9));

        let a = parse_quantity("1mm2").unwrap();
        assert_eq!(a.dim(), Dimension::AREA);
        assert!(close(a.magnitude(), 1e-6));

        let b = parse_quantity("1T").unwrap();
        assert_eq!(b.dim(), Dimension::FLUX_DENSITY);

        let mm = parse_quantity("4.0026 g/mol").unwrap();
        assert_eq!(mm.dim(), Dimension::MOLAR_MASS);
    }

    #[test]
    fn elementary_charge_multiples() {
        let e = parse_quantity("e").unwrap();
        assert_eq!(e.magnitude(), super::super::constants::ELEMENTARY_CHARGE);
        let two = parse_quantity("2e").unwrap();
        assert!(close(two.magnitude(), 2.0 * e.magnitude()));
        let plain = parse_quantity("2e-3").unwrap();
        assert!(plain.dim().is_dimensionless());
        assert!(close(plain.magnitude(), 2e-3));
        let ms = parse_quantity("2e-3 s").unwrap();
        assert_eq!(ms.dim(), Dimension::TIME);
    }

    #[test]
    fn rejects_unknown() {
        assert!(parse_unit("furlong").is_err());
        assert!(parse_quantity("abc").is_err());
        assert!(parse_quantity("").is_err());
    }
}

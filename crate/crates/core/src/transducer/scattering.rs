//! Scattering between the electromagnetic and gravitational channels.
//!
//! The total cross-section is the geometric hard-sphere area of the pair,
//! an order-of-magnitude estimate. It is split between the two outgoing
//! channels with a symmetric branching matrix: the converting fraction is
//! rho/(1+rho), the same-channel fraction 1/(1+rho). Because the split only
//! depends on whether the channel changes, sigma(x -> y) == sigma(y -> x)
//! holds exactly.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{conversion_efficiency, TransducerPair};
use crate::error::Result;
use crate::units::{Dimension, Quantity};

pub const CROSS_SECTION_PRECISION: &str = "order-of-magnitude";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ChannelKind {
    Gr,
    Em,
}

impl ChannelKind {
    pub fn other(self) -> Self {
        match self {
            ChannelKind::Gr => ChannelKind::Em,
            ChannelKind::Em => ChannelKind::Gr,
        }
    }
}

/// A scattering channel: radiation kind plus a direction/polarization tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChannelMode {
    pub kind: ChannelKind,
    pub label: String,
}

impl ChannelMode {
    pub fn new(kind: ChannelKind, label: impl Into<String>) -> Self {
        ChannelMode {
            kind,
            label: label.into(),
        }
    }

    /// The corresponding solution in the other channel (same label).
    pub fn counterpart(&self) -> Self {
        ChannelMode::new(self.kind.other(), self.label.clone())
    }
}

/// pi (R_a^2 + R_b^2); 2 pi R^2 for equal radii.
pub fn geometric_cross_section(pair: &TransducerPair) -> Result<Quantity> {
    let sigma = PI * pair.drop_a().radius().powi(2).try_add(pair.drop_b().radius().powi(2))?;
    sigma.ensure(Dimension::AREA, "geometric_cross_section")
}

pub fn scatter_cross_section(pair: &TransducerPair, in_mode: &ChannelMode, out_mode: &ChannelMode) -> Result<Quantity> {
    let total = geometric_cross_section(pair)?;
    let eta = conversion_efficiency(pair)?;
    let fraction = if in_mode.kind == out_mode.kind { 1.0 - eta } else { eta };
    (total * fraction).ensure(Dimension::AREA, "scatter_cross_section")
}

//! Pinned fundamental constants.
//!
//! Values are the CODATA 2018 recommended values (exact where the 2019 SI
//! redefinition fixed them). The Coulomb constant is derived from the pinned
//! vacuum permittivity as 1/(4 pi eps0); with it every Gaussian-unit formula
//! maps onto SI by replacing e^2 with k_e e^2.

use std::f64::consts::PI;

use super::{Dimension, Quantity};

pub const CODATA_RELEASE: &str = "CODATA 2018";

pub const GRAVITATIONAL_CONSTANT: f64 = 6.674_30e-11;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
pub const BOLTZMANN: f64 = 1.380_649e-23;
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Atomic mass of helium-4 in unified atomic mass units.
pub const HELIUM4_MASS_U: f64 = 4.002_603_254;
pub const AVOGADRO: f64 = 6.022_140_76e23;
pub const EARTH_MASS: f64 = 5.9722e24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantsTable {
    pub release: &'static str,
    pub g: Quantity,
    pub c: Quantity,
    pub hbar: Quantity,
    pub e: Quantity,
    pub k_b: Quantity,
    pub k_e: Quantity,
    pub m_e: Quantity,
    pub m_he4: Quantity,
    pub n_a: Quantity,
}

static TABLE: ConstantsTable = ConstantsTable {
    release: CODATA_RELEASE,
    g: Quantity::raw(GRAVITATIONAL_CONSTANT, Dimension::GRAVITATIONAL),
    c: Quantity::raw(SPEED_OF_LIGHT, Dimension::VELOCITY),
    hbar: Quantity::raw(REDUCED_PLANCK, Dimension::ACTION),
    e: Quantity::raw(ELEMENTARY_CHARGE, Dimension::CHARGE),
    k_b: Quantity::raw(BOLTZMANN, Dimension::ENTROPY),
    k_e: Quantity::raw(1.0 / (4.0 * PI * VACUUM_PERMITTIVITY), Dimension::COULOMB),
    m_e: Quantity::raw(ELECTRON_MASS, Dimension::MASS),
    m_he4: Quantity::raw(HELIUM4_MASS_U * ATOMIC_MASS_UNIT, Dimension::MASS),
    n_a: Quantity::raw(AVOGADRO, Dimension::PER_AMOUNT),
};

pub fn constants() -> &'static ConstantsTable {
    &TABLE
}

impl ConstantsTable {
    /// k_e e^2 / (hbar c), the SI form of e^2/(hbar c).
    pub fn alpha(&self) -> f64 {
        (self.k_e * self.e * self.e / (self.hbar * self.c)).magnitude()
    }

    /// Molar mass of helium-4.
    pub fn helium4_molar_mass(&self) -> Quantity {
        self.m_he4 * self.n_a
    }

    pub fn earth_mass(&self) -> Quantity {
        Quantity::raw(EARTH_MASS, Dimension::MASS)
    }
}

//! Charged superfluid-helium drops ("Millikan oil drops") as transducers.
//!
//! Mass scales, force ratios, atom-count enhancement, zero-phonon response,
//! vortex circulation and the reciprocity-constrained scattering model for
//! a pair of drops.

mod quadrature;
mod scattering;
mod vortex;

pub use quadrature::integrate;
pub use scattering::{
    geometric_cross_section, scatter_cross_section, ChannelKind, ChannelMode, CROSS_SECTION_PRECISION,
};
pub use vortex::{
    circulation, circulation_quantum, circulation_with_min_distance, LoopPath, Point, VortexLoop,
    DEFAULT_MIN_DISTANCE_FRACTION,
};

use crate::error::{Error, Result};
use crate::radiation::power_ratio;
use crate::units::{constants, Dimension, Quantity};

/// Electron surface-state binding energy on helium, in kelvin.
/// Reference value only; no model consumes it.
pub const SURFACE_STATE_BINDING_K: f64 = 8.0;
/// Binding energy of an electron to a quantized vortex core, in kelvin.
/// Reference value only; no model consumes it.
pub const VORTEX_BINDING_K: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DropSpec {
    mass: Quantity,
    n_electrons: u32,
    radius: Quantity,
    temperature: Quantity,
    b_field: Quantity,
    molar_mass: Quantity,
}

impl DropSpec {
    /// A helium-4 drop. Total charge is `n_electrons` elementary charges.
    pub fn new(
        mass: Quantity,
        n_electrons: u32,
        radius: Quantity,
        temperature: Quantity,
        b_field: Quantity,
    ) -> Result<Self> {
        DropSpec::with_molar_mass(
            mass,
            n_electrons,
            radius,
            temperature,
            b_field,
            constants().helium4_molar_mass(),
        )
    }

    pub fn with_molar_mass(
        mass: Quantity,
        n_electrons: u32,
        radius: Quantity,
        temperature: Quantity,
        b_field: Quantity,
        molar_mass: Quantity,
    ) -> Result<Self> {
        let m = mass.require(Dimension::MASS, "drop mass")?;
        let r = radius.require(Dimension::LENGTH, "drop radius")?;
        let t = temperature.require(Dimension::TEMPERATURE, "drop temperature")?;
        b_field.require(Dimension::FLUX_DENSITY, "drop b_field")?;
        let mm = molar_mass.require(Dimension::MOLAR_MASS, "drop molar_mass")?;
        if m <= 0.0 {
            return Err(Error::domain("drop mass must be > 0"));
        }
        if r <= 0.0 {
            return Err(Error::domain("drop radius must be > 0"));
        }
        if t <= 0.0 {
            return Err(Error::domain("drop temperature must be > 0"));
        }
        if n_electrons < 1 {
            return Err(Error::domain("drop must carry at least one electron"));
        }
        if mm <= 0.0 {
            return Err(Error::domain("drop molar_mass must be > 0"));
        }
        Ok(DropSpec {
            mass,
            n_electrons,
            radius,
            temperature,
            b_field,
            molar_mass,
        })
    }

    pub fn mass(&self) -> Quantity {
        self.mass
    }

    pub fn n_electrons(&self) -> u32 {
        self.n_electrons
    }

    pub fn radius(&self) -> Quantity {
        self.radius
    }

    pub fn temperature(&self) -> Quantity {
        self.temperature
    }

    pub fn b_field(&self) -> Quantity {
        self.b_field
    }

    pub fn molar_mass(&self) -> Quantity {
        self.molar_mass
    }

    pub fn charge(&self) -> Quantity {
        constants().e * self.n_electrons as f64
    }

    /// Same drop with a different mass; everything else unchanged.
    pub fn with_mass(&self, mass: Quantity) -> Result<Self> {
        DropSpec::with_molar_mass(
            mass,
            self.n_electrons,
            self.radius,
            self.temperature,
            self.b_field,
            self.molar_mass,
        )
    }

    /// G m^2 / (k_e q^2) for this drop.
    pub fn coupling_ratio(&self) -> Result<f64> {
        power_ratio(self.charge(), self.mass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransducerPair {
    drop_a: DropSpec,
    drop_b: DropSpec,
    separation: Quantity,
    frequency: Quantity,
}

impl TransducerPair {
    pub fn new(drop_a: DropSpec, drop_b: DropSpec, separation: Quantity, frequency: Quantity) -> Result<Self> {
        let r = separation.require(Dimension::LENGTH, "pair separation")?;
        let f = frequency.require(Dimension::FREQUENCY, "pair frequency")?;
        let contact = drop_a.radius.magnitude() + drop_b.radius.magnitude();
        if r <= contact {
            return Err(Error::domain(format!(
                "drops overlap: separation {r:e} m <= sum of radii {contact:e} m"
            )));
        }
        if f <= 0.0 {
            return Err(Error::domain("pair frequency must be > 0"));
        }
        Ok(TransducerPair {
            drop_a,
            drop_b,
            separation,
            frequency,
        })
    }

    /// Two copies of the same drop.
    pub fn symmetric(drop: DropSpec, separation: Quantity, frequency: Quantity) -> Result<Self> {
        TransducerPair::new(drop, drop, separation, frequency)
    }

    pub fn drop_a(&self) -> &DropSpec {
        &self.drop_a
    }

    pub fn drop_b(&self) -> &DropSpec {
        &self.drop_b
    }

    pub fn separation(&self) -> Quantity {
        self.separation
    }

    pub fn frequency(&self) -> Quantity {
        self.frequency
    }

    pub fn with_drops(&self, drop_a: DropSpec, drop_b: DropSpec) -> Result<Self> {
        TransducerPair::new(drop_a, drop_b, self.separation, self.frequency)
    }

    pub fn with_separation(&self, separation: Quantity) -> Result<Self> {
        TransducerPair::new(self.drop_a, self.drop_b, separation, self.frequency)
    }
}

/// sqrt(hbar c / G)
pub fn planck_mass() -> Result<Quantity> {
    let k = constants();
    (k.hbar * k.c / k.g).sqrt()?.ensure(Dimension::MASS, "planck_mass")
}

/// Mass at which gravity balances the Coulomb repulsion between two drops
/// each carrying `n_electrons`: n sqrt(k_e e^2 / (hbar c)) m_Planck.
pub fn critical_mass(n_electrons: u32) -> Result<Quantity> {
    if n_electrons < 1 {
        return Err(Error::domain("critical_mass needs n_electrons >= 1"));
    }
    let k = constants();
    let sqrt_alpha = (k.k_e * k.e * k.e / (k.hbar * k.c)).sqrt()?;
    (planck_mass()? * sqrt_alpha * n_electrons as f64).ensure(Dimension::MASS, "critical_mass")
}

/// |F_G| / |F_e| = G m_a m_b / (k_e q_a q_b); independent of separation.
pub fn force_ratio(drop_a: &DropSpec, drop_b: &DropSpec) -> Result<f64> {
    let k = constants();
    let qq = drop_a.charge() * drop_b.charge();
    if qq.magnitude() == 0.0 {
        return Err(Error::UndefinedRatio("drop charge is zero".into()));
    }
    let ratio = (k.g * drop_a.mass * drop_b.mass / (k.k_e * qq)).ensure(Dimension::DIMENSIONLESS, "force_ratio")?;
    Ok(ratio.magnitude())
}

/// Number of atoms: m N_A / M.
pub fn atom_count(drop: &DropSpec) -> Result<f64> {
    let n = (drop.mass * constants().n_a / drop.molar_mass).ensure(Dimension::DIMENSIONLESS, "atom_count")?;
    Ok(n.magnitude())
}

/// N_atom^2: the coherent enhancement of the quadrupolar power over a pair of
/// single atoms. Identical to the m^2 dependence of the gravitational power.
pub fn enhancement_factor(drop: &DropSpec) -> Result<f64> {
    Ok(atom_count(drop)?.powi(2))
}

/// hbar e B / m_e
pub fn cyclotron_gap(b_field: Quantity) -> Result<Quantity> {
    let b = b_field.require(Dimension::FLUX_DENSITY, "cyclotron_gap B")?;
    if b <= 0.0 {
        return Err(Error::domain("cyclotron gap needs B > 0 (no field, no gap)"));
    }
    let k = constants();
    (k.hbar * k.e * b_field / k.m_e).ensure(Dimension::ENERGY, "cyclotron_gap")
}

/// Probability that no internal excitation is produced: 1 - exp(-E_gap / k_B T).
pub fn zero_phonon_probability(e_gap: Quantity, temperature: Quantity) -> Result<f64> {
    let gap = e_gap.require(Dimension::ENERGY, "zero_phonon e_gap")?;
    let t = temperature.require(Dimension::TEMPERATURE, "zero_phonon T")?;
    if t <= 0.0 {
        return Err(Error::domain("zero_phonon_probability needs T > 0"));
    }
    if gap < 0.0 {
        return Err(Error::domain("zero_phonon_probability needs e_gap >= 0"));
    }
    let x = (e_gap / (constants().k_b * temperature)).value("zero_phonon exponent")?;
    Ok(-(-x).exp_m1())
}

/// Branching fraction into the opposite channel, rho / (1 + rho).
pub(crate) fn branching(rho: f64) -> f64 {
    if rho.is_infinite() {
        1.0
    } else {
        rho / (1.0 + rho)
    }
}

/// Fraction of incident power converted between the EM and GR channels.
///
/// Each drop contributes rho/(1+rho) with rho = G m^2/(k_e q^2); an
/// asymmetric pair combines the two as a geometric mean.
pub fn conversion_efficiency(pair: &TransducerPair) -> Result<f64> {
    let eta_a = branching(pair.drop_a.coupling_ratio()?);
    let eta_b = branching(pair.drop_b.coupling_ratio()?);
    if pair.drop_a == pair.drop_b {
        return Ok(eta_a);
    }
    Ok((eta_a * eta_b).sqrt())
}

//! Larmor-type radiated power for charges and masses.
//!
//! The quadrupolar ("primed") powers carry a numerical prefactor `kappa`
//! that is left to the caller. Every ratio computed here is independent of
//! it and of the acceleration.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::units::{constants, Dimension, Quantity};

pub const DEFAULT_KAPPA: f64 = 1.0;
pub const DEFAULT_NEGLIGIBLE_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiatingBody {
    charge: Quantity,
    mass: Quantity,
    acceleration: Quantity,
    kappa: f64,
}

impl RadiatingBody {
    pub fn new(charge: Quantity, mass: Quantity, acceleration: Quantity, kappa: f64) -> Result<Self> {
        charge.require(Dimension::CHARGE, "radiating body charge")?;
        let m = mass.require(Dimension::MASS, "radiating body mass")?;
        acceleration.require(Dimension::ACCELERATION, "radiating body acceleration")?;
        if m < 0.0 {
            return Err(Error::domain("radiating body mass must be >= 0"));
        }
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::domain(format!("kappa must be positive and finite, got {kappa}")));
        }
        Ok(RadiatingBody {
            charge,
            mass,
            acceleration,
            kappa,
        })
    }

    pub fn charge(&self) -> Quantity {
        self.charge
    }

    pub fn mass(&self) -> Quantity {
        self.mass
    }

    pub fn acceleration(&self) -> Quantity {
        self.acceleration
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerBreakdown {
    pub p_em: Quantity,
    pub p_gr: Quantity,
    /// p_gr / p_em; `None` when the body is uncharged.
    pub ratio: Option<f64>,
}

/// (2/3) k_e q^2 a^2 / c^3
pub fn larmor_em_power(q: Quantity, a: Quantity) -> Result<Quantity> {
    q.require(Dimension::CHARGE, "larmor q")?;
    a.require(Dimension::ACCELERATION, "larmor a")?;
    let k = constants();
    let p = (2.0 / 3.0) * k.k_e * q.powi(2) * a.powi(2) / k.c.powi(3);
    p.ensure(Dimension::POWER, "larmor_em_power")
}

pub fn quadrupolar_em_power(body: &RadiatingBody) -> Result<Quantity> {
    let p = larmor_em_power(body.charge, body.acceleration)? * body.kappa;
    p.ensure(Dimension::POWER, "quadrupolar_em_power")
}

/// kappa (2/3) G m^2 a^2 / c^3
pub fn quadrupolar_gr_power(body: &RadiatingBody) -> Result<Quantity> {
    let k = constants();
    let p = body.kappa * (2.0 / 3.0) * k.g * body.mass.powi(2) * body.acceleration.powi(2) / k.c.powi(3);
    p.ensure(Dimension::POWER, "quadrupolar_gr_power")
}

/// G m^2 / (k_e q^2): gravitational-to-electromagnetic coupling ratio.
pub fn power_ratio(q: Quantity, m: Quantity) -> Result<f64> {
    q.require(Dimension::CHARGE, "power_ratio q")?;
    m.require(Dimension::MASS, "power_ratio m")?;
    if q.magnitude() == 0.0 {
        return Err(Error::UndefinedRatio("charge is zero".into()));
    }
    let k = constants();
    let ratio = (k.g * m.powi(2) / (k.k_e * q.powi(2))).ensure(Dimension::DIMENSIONLESS, "power_ratio")?;
    Ok(ratio.magnitude())
}

pub fn gr_negligible(q: Quantity, m: Quantity, kappa: f64) -> Result<bool> {
    gr_negligible_with_threshold(q, m, kappa, DEFAULT_NEGLIGIBLE_THRESHOLD)
}

/// kappa G m^2 / (k_e q^2) < threshold
pub fn gr_negligible_with_threshold(q: Quantity, m: Quantity, kappa: f64, threshold: f64) -> Result<bool> {
    Ok(kappa * power_ratio(q, m)? < threshold)
}

pub fn power_breakdown(body: &RadiatingBody) -> Result<PowerBreakdown> {
    let p_em = quadrupolar_em_power(body)?;
    let p_gr = quadrupolar_gr_power(body)?;
    let ratio = if body.charge.magnitude() == 0.0 {
        None
    } else {
        Some(power_ratio(body.charge, body.mass)?)
    };
    Ok(PowerBreakdown { p_em, p_gr, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transducer::{critical_mass, planck_mass};
    use proptest::prelude::*;

    fn accel(x: f64) -> Quantity {
        Quantity::new(x, Dimension::ACCELERATION).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    const LARMOR_E_1: f64 = 5.708_326_765_029_507e-54;

    #[test]
    fn larmor_single_electron() {
        let e = constants().e;
        assert_eq!(larmor_em_power(e * 0.0, accel(3.0)).unwrap().magnitude(), 0.0);
        let p = larmor_em_power(e, accel(1.0)).unwrap();
        assert_eq!(p.dim(), Dimension::POWER);
        assert!(rel(p.magnitude(), LARMOR_E_1) < 1e-12);
        let p2 = larmor_em_power(e * 2.0, accel(1.0)).unwrap();
        assert!(rel(p2.magnitude(), 4.0 * p.magnitude()) < 1e-15);
    }

    #[test]
    fn larmor_rejects_wrong_dimensions() {
        let e = constants().e;
        assert!(matches!(
            larmor_em_power(e, constants().c),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn quadrupolar_em_scales_with_kappa() {
        let k = constants();
        let b1 = RadiatingBody::new(k.e, k.m_e, accel(1.0), 1.0).unwrap();
        assert_eq!(
            quadrupolar_em_power(&b1).unwrap(),
            larmor_em_power(k.e, accel(1.0)).unwrap()
        );
        let b = RadiatingBody::new(k.e, k.m_e, accel(1.0), 2.5).unwrap();
        assert!(rel(quadrupolar_em_power(&b).unwrap().magnitude(), 2.5 * LARMOR_E_1) < 1e-12);
        let neutral = RadiatingBody::new(k.e * 0.0, k.m_e, accel(1.0), 7.0).unwrap();
        assert_eq!(quadrupolar_em_power(&neutral).unwrap().magnitude(), 0.0);
    }

    #[test]
    fn quadrupolar_gr() {
        let k = constants();
        let massless = RadiatingBody::new(k.e, k.m_e * 0.0, accel(1.0), 1.0).unwrap();
        assert_eq!(quadrupolar_gr_power(&massless).unwrap().magnitude(), 0.0);

        let electron = RadiatingBody::new(k.e, k.m_e, accel(1.0), 1.0).unwrap();
        let p = quadrupolar_gr_power(&electron).unwrap();
        assert_eq!(p.dim(), Dimension::POWER);
        assert!(rel(p.magnitude() / LARMOR_E_1, 2.4e-43) < 0.05);

        let heavy = RadiatingBody::new(k.e, k.m_e * 2.0, accel(1.0), 1.0).unwrap();
        assert!(rel(quadrupolar_gr_power(&heavy).unwrap().magnitude(), 4.0 * p.magnitude()) < 1e-15);
    }

    #[test]
    fn ratio_values() {
        let k = constants();
        assert!(rel(power_ratio(k.e, k.m_e).unwrap(), 2.4e-43) < 0.05);
        let crit = critical_mass(1).unwrap();
        assert!((power_ratio(k.e, crit).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(power_ratio(k.e, k.m_e * 0.0).unwrap(), 0.0);
        assert!(matches!(power_ratio(k.e * 0.0, k.m_e), Err(Error::UndefinedRatio(_))));
    }

    #[test]
    fn negligibility() {
        let k = constants();
        assert!(gr_negligible(k.e, k.m_e, 1.0).unwrap());
        assert!(!gr_negligible(k.e, critical_mass(1).unwrap(), 1.0).unwrap());
        assert!(!gr_negligible(k.e, planck_mass().unwrap(), 1.0).unwrap());
        assert!(gr_negligible(k.e * 0.0, k.m_e, 1.0).is_err());
    }

    #[test]
    fn body_invariants() {
        let k = constants();
        assert!(RadiatingBody::new(k.e, k.m_e * -1.0, accel(1.0), 1.0).is_err());
        assert!(RadiatingBody::new(k.e, k.m_e, accel(1.0), 0.0).is_err());
        assert!(RadiatingBody::new(k.e * -1.0, k.m_e, accel(1.0), 1.0).is_ok());
    }

    proptest! {
        #[test]
        fn kappa_cancels(k1 in 0.01..100.0f64, k2 in 0.01..100.0f64, a in 1e-3..1e6f64, m in 1e-31..1e-6f64) {
            let k = constants();
            let mass = Quantity::new(m, Dimension::MASS).unwrap();
            let b1 = RadiatingBody::new(k.e, mass, accel(a), k1).unwrap();
            let b2 = RadiatingBody::new(k.e, mass, accel(a), k2).unwrap();
            let r1 = quadrupolar_gr_power(&b1).unwrap().magnitude() / quadrupolar_em_power(&b1).unwrap().magnitude();
            let r2 = quadrupolar_gr_power(&b2).unwrap().magnitude() / quadrupolar_em_power(&b2).unwrap().magnitude();
            prop_assert!(rel(r1, r2) < 1e-14);
            prop_assert!(rel(r1, power_ratio(k.e, mass).unwrap()) < 1e-12);
        }
    }
}

use std::fmt;
use std::ops::{Div, Mul};

use serde::{Deserialize, Serialize};

/// Integer exponents over the six SI base dimensions used here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Dimension {
    pub mass: i8,
    pub length: i8,
    pub time: i8,
    pub current: i8,
    pub temperature: i8,
    pub amount: i8,
}

const fn dim(mass: i8, length: i8, time: i8, current: i8, temperature: i8, amount: i8) -> Dimension {
    Dimension {
        mass,
        length,
        time,
        current,
        temperature,
        amount,
    }
}

impl Dimension {
    pub const DIMENSIONLESS: Dimension = dim(0, 0, 0, 0, 0, 0);
    pub const MASS: Dimension = dim(1, 0, 0, 0, 0, 0);
    pub const LENGTH: Dimension = dim(0, 1, 0, 0, 0, 0);
    pub const TIME: Dimension = dim(0, 0, 1, 0, 0, 0);
    pub const CURRENT: Dimension = dim(0, 0, 0, 1, 0, 0);
    pub const TEMPERATURE: Dimension = dim(0, 0, 0, 0, 1, 0);
    pub const AMOUNT: Dimension = dim(0, 0, 0, 0, 0, 1);

    pub const AREA: Dimension = dim(0, 2, 0, 0, 0, 0);
    pub const FREQUENCY: Dimension = dim(0, 0, -1, 0, 0, 0);
    pub const VELOCITY: Dimension = dim(0, 1, -1, 0, 0, 0);
    pub const ACCELERATION: Dimension = dim(0, 1, -2, 0, 0, 0);
    pub const FORCE: Dimension = dim(1, 1, -2, 0, 0, 0);
    pub const ENERGY: Dimension = dim(1, 2, -2, 0, 0, 0);
    pub const POWER: Dimension = dim(1, 2, -3, 0, 0, 0);
    pub const ACTION: Dimension = dim(1, 2, -1, 0, 0, 0);
    pub const CHARGE: Dimension = dim(0, 0, 1, 1, 0, 0);
    pub const FLUX_DENSITY: Dimension = dim(1, 0, -2, -1, 0, 0);
    pub const ENTROPY: Dimension = dim(1, 2, -2, 0, -1, 0);
    pub const MOLAR_MASS: Dimension = dim(1, 0, 0, 0, 0, -1);
    pub const PER_AMOUNT: Dimension = dim(0, 0, 0, 0, 0, -1);
    pub const CIRCULATION: Dimension = dim(0, 2, -1, 0, 0, 0);
    /// G: m^3 kg^-1 s^-2
    pub const GRAVITATIONAL: Dimension = dim(-1, 3, -2, 0, 0, 0);
    /// k_e: kg m^3 s^-4 A^-2
    pub const COULOMB: Dimension = dim(1, 3, -4, -2, 0, 0);

    pub fn is_dimensionless(self) -> bool {
        self == Self::DIMENSIONLESS
    }

    fn zip(self, other: Self, f: impl Fn(i8, i8) -> i8) -> Self {
        dim(
            f(self.mass, other.mass),
            f(self.length, other.length),
            f(self.time, other.time),
            f(self.current, other.current),
            f(self.temperature, other.temperature),
            f(self.amount, other.amount),
        )
    }

    fn map(self, f: impl Fn(i8) -> i8) -> Self {
        self.zip(self, |a, _| f(a))
    }

    pub fn powi(self, n: i8) -> Self {
        self.map(|e| e * n)
    }

    pub fn recip(self) -> Self {
        self.map(|e| -e)
    }

    /// Halves every exponent; `None` when any exponent is odd.
    pub fn sqrt(self) -> Option<Self> {
        let exps = self.exponents();
        if exps.iter().any(|e| e % 2 != 0) {
            return None;
        }
        Some(self.map(|e| e / 2))
    }

    pub fn exponents(self) -> [i8; 6] {
        [
            self.mass,
            self.length,
            self.time,
            self.current,
            self.temperature,
            self.amount,
        ]
    }
}

impl Mul for Dimension {
    type Output = Dimension;

    fn mul(self, rhs: Dimension) -> Dimension {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Div for Dimension {
    type Output = Dimension;

    fn div(self, rhs: Dimension) -> Dimension {
        self.zip(rhs, |a, b| a - b)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return f.write_str("1");
        }
        let symbols = ["kg", "m", "s", "A", "K", "mol"];
        let mut first = true;
        for (sym, exp) in symbols.iter().zip(self.exponents()) {
            if exp == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{exp}")?;
            }
        }
        Ok(())
    }
}

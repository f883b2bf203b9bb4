use std::fmt;
use std::ops::{Div, Mul, Neg};

use serde::{Deserialize, Serialize};

use super::Dimension;
use crate::error::{Error, Result};

/// A finite magnitude in coherent SI base units together with its dimension.
///
/// Multiplication and division through the `*` / `/` operators only do
/// exponent arithmetic and never fail on dimensions; a magnitude that
/// overflows is caught by [`Quantity::ensure`], which every public physics
/// operation applies to its result. Addition is only available through the
/// checked [`combine`] / [`Quantity::try_add`] routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    magnitude: f64,
    dim: Dimension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Add,
    Sub,
    Mul,
    Div,
}

/// Construct a quantity; rejects non-finite magnitudes.
pub fn quantity(magnitude: f64, dim: Dimension) -> Result<Quantity> {
    Quantity::new(magnitude, dim)
}

/// Checked binary arithmetic on quantities.
pub fn combine(a: Quantity, b: Quantity, op: Operator) -> Result<Quantity> {
    let out = match op {
        Operator::Add | Operator::Sub => {
            if a.dim != b.dim {
                return Err(Error::Dimension {
                    context: format!("{op:?}"),
                    expected: a.dim,
                    found: b.dim,
                });
            }
            let m = if op == Operator::Add {
                a.magnitude + b.magnitude
            } else {
                a.magnitude - b.magnitude
            };
            Quantity::raw(m, a.dim)
        }
        Operator::Mul => a * b,
        Operator::Div => {
            if b.magnitude == 0.0 {
                return Err(Error::DivisionByZero(format!("{a} / {b}")));
            }
            a / b
        }
    };
    out.finite(&format!("{op:?}"))
}

impl Quantity {
    pub fn new(magnitude: f64, dim: Dimension) -> Result<Self> {
        Quantity::raw(magnitude, dim).finite("quantity construction")
    }

    pub(crate) const fn raw(magnitude: f64, dim: Dimension) -> Self {
        Quantity { magnitude, dim }
    }

    pub fn dimensionless(value: f64) -> Result<Self> {
        Quantity::new(value, Dimension::DIMENSIONLESS)
    }

    pub fn zero(dim: Dimension) -> Self {
        Quantity::raw(0.0, dim)
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn try_add(self, other: Quantity) -> Result<Quantity> {
        combine(self, other, Operator::Add)
    }

    pub fn try_sub(self, other: Quantity) -> Result<Quantity> {
        combine(self, other, Operator::Sub)
    }

    pub fn powi(self, n: i8) -> Quantity {
        Quantity::raw(self.magnitude.powi(n as i32), self.dim.powi(n))
    }

    pub fn sqrt(self) -> Result<Quantity> {
        let dim = self
            .dim
            .sqrt()
            .ok_or_else(|| Error::domain(format!("square root of odd dimension {}", self.dim)))?;
        if self.magnitude < 0.0 {
            return Err(Error::domain(format!("square root of negative {self}")));
        }
        Ok(Quantity::raw(self.magnitude.sqrt(), dim))
    }

    pub fn abs(self) -> Quantity {
        Quantity::raw(self.magnitude.abs(), self.dim)
    }

    pub fn recip(self) -> Quantity {
        Quantity::raw(1.0 / self.magnitude, self.dim.recip())
    }

    pub fn finite(self, context: &str) -> Result<Quantity> {
        if self.magnitude.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(context.to_string()))
        }
    }

    /// Checks both the dimension and finiteness of a computed result.
    pub fn ensure(self, expected: Dimension, context: &str) -> Result<Quantity> {
        self.require(expected, context)?;
        self.finite(context)
    }

    /// Checks that an input carries the expected dimension.
    pub fn require(&self, expected: Dimension, context: &str) -> Result<f64> {
        if self.dim != expected {
            return Err(Error::Dimension {
                context: context.to_string(),
                expected,
                found: self.dim,
            });
        }
        Ok(self.magnitude)
    }

    /// Magnitude of a dimensionless quantity.
    pub fn value(&self, context: &str) -> Result<f64> {
        self.require(Dimension::DIMENSIONLESS, context)
    }

    pub fn is_positive(&self) -> bool {
        self.magnitude > 0.0
    }
}

impl Mul for Quantity {
    type Output = Quantity;

    fn mul(self, rhs: Quantity) -> Quantity {
        Quantity::raw(self.magnitude * rhs.magnitude, self.dim * rhs.dim)
    }
}

impl Div for Quantity {
    type Output = Quantity;

    fn div(self, rhs: Quantity) -> Quantity {
        Quantity::raw(self.magnitude / rhs.magnitude, self.dim / rhs.dim)
    }
}

impl Mul<f64> for Quantity {
    type Output = Quantity;

    fn mul(self, rhs: f64) -> Quantity {
        Quantity::raw(self.magnitude * rhs, self.dim)
    }
}

impl Mul<Quantity> for f64 {
    type Output = Quantity;

    fn mul(self, rhs: Quantity) -> Quantity {
        rhs * self
    }
}

impl Div<f64> for Quantity {
    type Output = Quantity;

    fn div(self, rhs: f64) -> Quantity {
        Quantity::raw(self.magnitude / rhs, self.dim)
    }
}

impl Neg for Quantity {
    type Output = Quantity;

    fn neg(self) -> Quantity {
        Quantity::raw(-self.magnitude, self.dim)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim.is_dimensionless() {
            write!(f, "{:e}", self.magnitude)
        } else {
            write!(f, "{:e} {}", self.magnitude, self.dim)
        }
    }
}

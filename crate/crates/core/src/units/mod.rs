//! Dimension-checked quantities and the pinned constants table.
//!
//! Formulas are evaluated in coherent SI base units. Expressions written in
//! Gaussian units elsewhere map onto this layer as follows:
//!
//! | Gaussian form        | SI form used here        |
//! |----------------------|--------------------------|
//! | e^2 / r^2 (Coulomb)  | k_e e^2 / r^2            |
//! | (2/3) q^2 a^2 / c^3  | (2/3) k_e q^2 a^2 / c^3  |
//! | e^2 / (hbar c)       | k_e e^2 / (hbar c)       |
//! | G m^2 / e^2          | G m^2 / (k_e e^2)        |
//! | hbar e B / (m c)     | hbar e B / m             |

mod constants;
mod dimension;
mod parse;
mod quantity;

pub use constants::*;
pub use dimension::Dimension;
pub use parse::{describe, named_mass, parse_quantity, parse_unit, with_unit};
pub use quantity::{combine, quantity, Operator, Quantity};

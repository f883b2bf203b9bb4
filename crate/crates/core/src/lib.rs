//! Dimension-checked models of charged superfluid-drop transducers between
//! electromagnetic and gravitational radiation.
//!
//! * [`units`]: quantities with dimension vectors and pinned constants.
//! * [`radiation`]: Larmor and quadrupolar radiated powers.
//! * [`transducer`]: mass scales, zero-phonon response, circulation and
//!   scattering for a pair of charged drops.
//! * [`orbitsim`]: radiation-reaction decay of quasi-circular orbits.
//! * [`linkbudget`]: the transmitter/receiver link and its noise floor.
//! * [`cli`]: configuration loading, reports and the command-line front end.

pub mod cli;
pub mod error;
pub mod linkbudget;
pub mod orbitsim;
pub mod radiation;
pub mod transducer;
pub mod units;

pub use error::{Error, Result};

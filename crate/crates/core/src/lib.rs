//! Kinematical Lie algebras with exact structure constants.

pub mod algebra;
pub mod coeff;
pub mod dynamics;
pub mod error;
pub mod poisson;
pub mod realization;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};

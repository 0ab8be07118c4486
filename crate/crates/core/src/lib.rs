//! Computational engine for minimally twisted spectral triples on the flat
//! 4-torus: operators, fluctuations, Grassmann-valued fermionic actions,
//! boosts and plane-wave dynamics.

pub mod action;
pub mod cli;
pub mod clifford;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod grassmann;
pub mod operator;
pub mod random;
pub mod torus;
pub mod verify;

pub use error::{Result, TwistError};

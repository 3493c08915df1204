#![allow(clippy::needless_range_loop)]
//! Numerical Lorentzian spin geometry.

pub mod cli;
pub mod clifford;
pub mod error;
pub mod jet;

pub use error::{Error, Result};
pub mod geometry;
pub mod invariants;
pub mod models;
pub mod report;
pub mod spin;
pub mod suite;

//! File formats, bundled constructions, Monte Carlo simulation and the
//! command-line front end for the `qcdp-core` lattice library.

pub mod builtins;
pub mod cli;
pub mod config;
pub mod error;
pub mod formats;
pub mod sim;

pub use error::{Error, Result};

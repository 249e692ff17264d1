//! Command-line sweeps over the `nonmarkov` library: memory functions,
//! concurrence curves and surfaces, Markov comparisons and a validation suite.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod validate;

pub use error::{CliError, CliResult};

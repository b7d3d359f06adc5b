//! Seeded experiments behind the `gafzeros` binary: zero scatter plots,
//! intensity curves, Monte Carlo counts and the residual suites.

pub mod commands;
pub mod config;
pub mod error;
pub mod plot;

pub use config::{ExperimentConfig, Formats, IntensityOptions, KernelChoice, SamplerTag, ThetaGrid};
pub use error::{CliError, CliResult};

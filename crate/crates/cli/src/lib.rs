//! Command-line harness around the `qdfe` library: trajectories, parameter
//! sweeps, critical times, reference-figure grids and a cross-check report.

pub mod app;
pub mod config;
pub mod error;
pub mod figures;
pub mod output;
pub mod run;
pub mod verify;

pub use error::CliError;

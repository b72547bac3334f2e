//! Experiment harness for the average-degree estimators: loads or generates
//! a graph, runs seeded trial campaigns over an epsilon grid, and emits
//! per-trial rows (CSV or JSON) with per-epsilon summaries.

pub mod config;
pub mod output;
pub mod runner;
pub mod validate;

pub use config::{Algo, ConfigFile, ExperimentConfig, Format, GraphSource};
pub use runner::{run, CampaignReport, ResultRow, Summary};
pub use validate::{validate_graph, ValidationReport};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const THRESHOLD_FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
}

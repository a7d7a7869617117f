//! Experiment runner for the `landslide` library: configuration, named experiments and their
//! JSON and CSV reports.

pub mod config;
pub mod experiments;
pub mod report;

pub use config::Config;
pub use experiments::Experiment;
pub use report::{Check, ExperimentReport, Outcome, Table};

//! Library half of the `domset` command-line tool: the experiment runner
//! and the pieces of command plumbing the integration tests drive
//! directly.

pub mod experiment;

pub use experiment::{
    canonical_report_json, run_experiment, ExperimentReport, GridConfig, REPORT_FORMAT_VERSION,
};

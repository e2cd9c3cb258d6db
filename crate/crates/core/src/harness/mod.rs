//! Experiment plumbing behind the command-line tool.

pub mod config;
pub mod fit;
pub mod report;
pub mod sweep;

pub use config::{AdversaryId, Grid, LearnerId, Overrides, SweepConfig, SweepSection};
pub use fit::{fit_csv, fit_power_law, ScalingFit};
pub use report::{dims_report, DimsReport};
pub use sweep::{run_cell, run_sweep, write_rows, Outcome, Row, CSV_HEADER};

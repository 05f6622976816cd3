//! Batch driver for the tightcheck verification suites.

pub mod config;
pub mod report;
pub mod suite;

pub use config::{Command, Format, RunConfig};
pub use report::{emit, Report};
pub use suite::run_suite;

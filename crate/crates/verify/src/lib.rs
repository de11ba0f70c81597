//! Check registry, JSON reports, golden files and the command-line driver
//! for `grassmann-core`.

pub mod checks;
pub mod cli;
pub mod context;
pub mod error;
pub mod golden;
pub mod registry;
pub mod report;
pub mod runner;
pub mod sample;
pub mod tally;

pub use error::{Result, VerifyError};
pub use registry::{Mode, Suite, REGISTRY};
pub use report::{CheckResult, Report};
pub use runner::{run_checks, run_suite, Run};
pub use tally::Status;

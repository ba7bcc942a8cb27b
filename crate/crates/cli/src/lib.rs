//! Command-line front end: graph sources, check orchestration and reports.

pub mod batch;
pub mod checks;
pub mod error;
pub mod report;
pub mod source;

pub use error::{exit, CliError};
pub use report::{CheckName, CheckResult, RunReport, Status};
pub use source::{parse_source, Source};

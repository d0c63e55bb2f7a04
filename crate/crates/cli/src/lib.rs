//! Library surface of the command-line front end: the trial runner and the
//! declarative suite machinery, shared with the integration tests.

pub mod runner;
pub mod suite;

pub use runner::{build_oracle, exit_code, exit_for_error, exit_for_summary, run_job, Job};
pub use suite::{run_suite, SuiteConfig};

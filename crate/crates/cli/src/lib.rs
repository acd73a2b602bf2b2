//! Batch driver for `singclass`. A job names a command, a ring, a map and points;
//! running it gives a [`run::ResultDoc`] that serialises to stable JSON.

pub mod job;
pub mod run;
pub mod suite;

pub use job::{parse_job, Command, JobOptions, JobSpec};
pub use run::{run_job, Overrides, ResultDoc, Status};
pub use suite::{read_manifest, run_suite, SuiteReport};

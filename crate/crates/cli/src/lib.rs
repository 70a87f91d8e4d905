//! Std companion of `pilot-overlap-core`: a rayon-backed executor, the grid
//! file format, result serializers and the experiment runner behind the
//! `pilot-overlap` binary.

pub mod config;
pub mod gridfile;
pub mod output;
pub mod parallel;
pub mod run;
pub mod svg;

pub use config::{Cli, Experiment, OutputFormat, RunConfig};
pub use parallel::Parallel;
pub use run::{run, RunError, RunReport};

/// `<crate version> (<git describe>)`
pub fn version_string() -> String {
    format!("{} ({})", env!("CARGO_PKG_VERSION"), env!("PILOT_OVERLAP_GIT_DESCRIBE"))
}

//! Experiment drivers behind the `numrange` binary: file formats, reports
//! and one entry point per subcommand.

pub mod commands;
pub mod error;
pub mod io;
pub mod report;
pub mod svg;

pub use error::{CliError, CliResult};
pub use report::{Format, Report};

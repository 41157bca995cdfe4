//! Command-line front end for `icregion`: distribution files, reports and
//! plots.

pub mod commands;
pub mod context;
pub mod distfile;
pub mod plot;

pub use commands::{run, Cli, Command, EXIT_BAD_INPUT, EXIT_CHECK_FAILED, EXIT_OK};

//! Command-line front end and JSON file formats for `cjt-core`.

pub mod cli;
pub mod format;

pub use cli::{execute, run, Cli, Command, Outcome, RunConfig};

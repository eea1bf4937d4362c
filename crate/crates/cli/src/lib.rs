//! Command-line front end: the form DSL, the results cache and the subcommands.

pub mod args;
pub mod cache;
pub mod commands;
pub mod dsl;
pub mod error;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use error::{exit, CliError};

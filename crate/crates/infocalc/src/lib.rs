//! Command-line front end and file formats for `infocalc-core`.

pub mod cli;
mod error;
pub mod formats;

pub use cli::{run, CommandResult};
pub use error::CliError;

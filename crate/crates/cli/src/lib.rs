//! Command-line front end for `maxplus-transience`.

pub mod app;
pub mod error;
pub mod format;
pub mod generate;
pub mod report;
pub mod verify;

pub use error::{CliError, CliResult};

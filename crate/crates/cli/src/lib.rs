//! Command-line front end for the `npfree` converter and detector.

pub mod bench;
pub mod commands;
pub mod error;
pub mod experiment;
pub mod io;

pub use error::{CliError, Result};

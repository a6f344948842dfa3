//! Command-line access to the freecone library: JSON documents for matroids,
//! configurations and invariants, and the commands that produce them.

pub mod commands;
pub mod documents;
mod error;

pub use commands::{run, Cli, Command, Outcome};
pub use error::CliError;

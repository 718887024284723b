//! Parser, file formats and command-line driver for `comdyn-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod paper;
pub mod parallel;
pub mod parse;

pub use cli::{run, Outcome};
pub use error::{CliError, Result};

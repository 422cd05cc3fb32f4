//! Library side of the `mscheme` command-line tool: document parsing and
//! serialization, command dispatch and report rendering.

pub mod commands;
pub mod document;
pub mod error;
pub mod render;

pub use commands::{run, Command, OpKind, Options, Outcome};
pub use document::{parse, Parsed};
pub use error::CliError;

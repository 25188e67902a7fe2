//! File-driven front end: JSON construction documents, rendering and
//! command dispatch for the `uninorm` binary.

pub mod commands;
pub mod document;
pub mod error;
pub mod render;

pub use commands::{run, Cli, Command};
pub use document::Document;
pub use error::CliError;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub struct BookCli;

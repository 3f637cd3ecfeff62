//! Document format and subcommands behind the `parcat` binary.

pub mod commands;
pub mod document;

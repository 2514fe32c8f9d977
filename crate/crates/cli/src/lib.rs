//! Subcommand implementations and report types for the `padic-qm` binary.

pub mod commands;
pub mod report;

//! File formats, reports, rendering and subcommands behind the `atucp` binary.

pub mod check;
pub mod commands;
pub mod config;
pub mod format;
pub mod render;
pub mod report;

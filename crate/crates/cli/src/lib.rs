//! Command drivers for the `fiverank` binary. Each command writes JSONL
//! records (with `record` and `schema` fields) to a writer, so the same code
//! backs the binary and the tests.

pub mod commands;
pub mod config;
pub mod paper;

pub use commands::Outcome;
pub use config::{RunConfig, Sign};

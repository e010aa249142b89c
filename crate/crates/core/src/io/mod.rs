//! Parsing, file output and the comparison harness behind `qwalk`.

#[cfg(feature = "cli")]
pub mod cli;
pub mod compare;
pub mod output;
pub mod parse;

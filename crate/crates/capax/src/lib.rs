//! Std companion to `capax-core`: graph file formats, JSON certificates and
//! fixtures, wall-clock and parallel independence search, the end-to-end
//! Shannon-capacity counterexample pipeline, and the `capax` CLI.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod pipeline;
pub mod search;

pub use capax_core as core;
pub use error::{Error, Result};

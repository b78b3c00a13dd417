//! IO, file formats, synthetic data, and pipeline orchestration for the
//! travel feature mining toolkit. The algorithms live in
//! [`lifecircle_core`]; this crate feeds them from CSVs and writes their
//! outputs back out.

pub mod config;
pub mod error;
pub mod export;
pub mod ingest;
pub mod pipeline;
pub mod synth;

pub use error::{CliError, CliResult};

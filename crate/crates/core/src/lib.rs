//! Passenger travel feature mining from POI and bus-trajectory data.
//!
//! The pipeline runs in four algorithmic stages:
//!
//! 1. [`meanshift`] — mode seeking over same-label POIs produces a seed set
//!    (cluster count plus initial centers).
//! 2. [`kmeans`] — Lloyd iterations over trajectory points, started from the
//!    POI seeds, yield per-passenger life circles.
//! 3. [`pattern`] — POIs inside each life circle are distance-weighted and
//!    aggregated into an integer travel-pattern row per passenger.
//! 4. [`plda`] — one seeded topic model per feature attribute infers class
//!    labels (age, occupation, gender, ...) from the pattern matrix.
//!
//! This crate is `no_std` + `alloc`; file formats, CSV ingestion, the
//! synthetic-data generator and the CLI live in the companion `lifecircle`
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod geo;
pub mod kmeans;
pub mod label;
pub mod meanshift;
pub mod metrics;
pub mod pattern;
pub mod plda;
pub mod records;
mod rng;

pub use error::Error;
pub use geo::GeoPoint;
pub use label::PoiLabel;
pub use records::{PoiRecord, TrajectoryRecord};

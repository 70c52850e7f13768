//! Propagation into container canyons at 28 GHz.
//!
//! A geometric model of the mean gain reaching a receiver at the bottom of
//! a corridor of stacked containers, the statistics used to characterize
//! angular scans recorded in such corridors, log-distance regression, and
//! a link budget that turns a fitted model into a coverage range. A seeded
//! generator produces synthetic campaigns that flow through the same
//! pipeline as measured CSV data.
//!
//! ```
//! use canyon::geometry::{received_power_approx, CanyonGeometry};
//!
//! let g = CanyonGeometry::new(17.4, 8.0, 100.0, 0.1, 5.0).unwrap();
//! assert!((received_power_approx(&g) - 1.392e-7).abs() < 1e-12);
//! ```

pub mod angular;
pub mod config;
pub mod dataset;
pub mod error;
pub mod geometry;
pub mod linkbudget;
pub mod pathloss;
pub mod report;
pub mod scan;
pub mod spatialcorr;
pub mod stats;
pub mod synth;
pub mod vehicle;

pub use error::{Error, ErrorCategory, Result};

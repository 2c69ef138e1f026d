//! Minimum-total-movement barrier coverage on a line segment.

pub mod cli;
pub mod error;
pub mod exact;
pub mod format;
pub mod generators;
pub mod grid;
pub mod harness;
pub mod model;
pub mod order_dp;
pub mod scalar;
pub mod untangle;

pub use error::{Error, Result};
pub use scalar::Scalar;

//! Exact Deligne pairings and norm functors for small projective families.

pub mod arith;
pub mod base;
pub mod cli;
pub mod error;
pub mod metric;
pub mod family;
pub mod norm;
pub mod pairing;
pub mod resultant;
pub mod suites;
pub mod task;

pub use error::{Error, Result};

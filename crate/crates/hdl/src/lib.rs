//! Command-line companion of `hdl-core`: map and report JSON, seeded random
//! maps, fuzz campaigns and envelope tables.

pub mod envelope;
pub mod error;
pub mod fuzz;
pub mod json;
pub mod random;

pub use error::{HdlError, Result};

//! Sharp Schwarz-type estimates, hyperbolic metrics and length/area
//! inequalities for harmonic maps of the unit disk.
//!
//! The crate is `no_std` and only needs `alloc`. Every map is represented by
//! truncated Taylor series of its analytic completions, and every inequality
//! is reported as a [`Check`] carrying its slack (`rhs - lhs`).
//!
//! Quantities that live on the boundary circle (length, diameter, area) are
//! computed for the dilation `f_r(z) = f(r z)` at an evaluation radius
//! `r < 1`; every estimate applies to `f_r` exactly, so constructed maps and
//! random maps are checked without boundary-regularity assumptions.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod extremal;
pub mod fft;
pub mod geometry;
pub mod hyperbolic;
pub mod quadrature;
pub mod report;
pub mod schwarz;
pub mod series;
pub mod tangent;

pub use error::{Error, Result};
pub use report::{Check, GeometryReport};
pub use series::{ComplexSeries, Dilatations, HarmonicMap, PlanarHarmonicMap, VectorHarmonicMap};

/// Double-precision complex number used throughout.
pub type C64 = num_complex::Complex64;

/// Default slack tolerance for every inequality check.
pub const SLACK_TOLERANCE: f64 = 1e-9;

/// Default truncation degree for constructed series.
pub const DEFAULT_DEGREE: usize = 256;

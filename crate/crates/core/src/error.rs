use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Reciprocal of a series whose constant term vanishes.
    ZeroConstantTerm,
    /// A Möbius parameter outside the open unit disk.
    BadDiskPoint { modulus: f64 },
    /// Radius outside the range accepted by the operation.
    RadiusOutOfRange { radius: f64 },
    /// Point not in the strip `-1 < Re w < 1` (with guard band).
    OutsideStrip { re: f64 },
    /// Real parameter not in `(-1, 1)`.
    OutsideInterval { value: f64 },
    /// Point not in the open unit disk (with guard band).
    OutsideDisk { modulus: f64 },
    /// A sampled map left its target domain.
    RangeViolation { excess: f64 },
    /// `|f(b)|` is not close enough to one at the boundary point.
    NotBoundaryFixed { modulus: f64 },
    /// A constructor's data violates its admissibility conditions.
    SpecViolation(&'static str),
    /// The differential has rank < 2 where a tangent plane is needed.
    DegeneratePoint,
    /// Too many grid points with vanishing Jacobian for a qc estimate.
    DegenerateJacobian { degenerate: usize, total: usize },
    /// Sample count is not a power of two, or too small.
    InvalidSampleCount(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroConstantTerm => write!(f, "series has a vanishing constant term"),
            Error::BadDiskPoint { modulus } => {
                write!(f, "Möbius parameter has modulus {modulus} >= 1")
            }
            Error::RadiusOutOfRange { radius } => write!(f, "radius {radius} out of range"),
            Error::OutsideStrip { re } => write!(f, "Re w = {re} is outside the strip (-1, 1)"),
            Error::OutsideInterval { value } => write!(f, "{value} is outside (-1, 1)"),
            Error::OutsideDisk { modulus } => write!(f, "|z| = {modulus} is outside the unit disk"),
            Error::RangeViolation { excess } => {
                write!(f, "map leaves its target domain by {excess:e}")
            }
            Error::NotBoundaryFixed { modulus } => {
                write!(f, "|f(b)| = {modulus} is not on the unit circle")
            }
            Error::SpecViolation(what) => write!(f, "inadmissible data: {what}"),
            Error::DegeneratePoint => write!(f, "differential has rank < 2"),
            Error::DegenerateJacobian { degenerate, total } => {
                write!(f, "{degenerate} of {total} points have a vanishing Jacobian")
            }
            Error::InvalidSampleCount(n) => write!(f, "invalid sample count {n}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn check_interval(value: f64) -> Result<f64> {
    if value.is_finite() && value > -1.0 && value < 1.0 {
        Ok(value)
    } else {
        Err(Error::OutsideInterval { value })
    }
}

//! Sharp Schwarz-type bounds for harmonic maps into `(-1, 1)` and into the
//! unit disk: the envelopes `X±(r, a)`, their derivatives, gradient bounds
//! and the boundary bound.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{check_interval, Error, Result};
use crate::report::Check;
use crate::series::{disk_automorphism, PlanarHarmonicMap, VectorHarmonicMap};
use crate::{C64, SLACK_TOLERANCE};

const FOUR_OVER_PI: f64 = 4.0 / PI;

/// Scalars `s`, `e`, `α` attached to a value `a ∈ (-1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchwarzParams {
    pub a: f64,
    /// `tan(π(a + 1)/4)`.
    pub s: f64,
    /// `cot(π(a + 1)/4) = 1/s`.
    pub e: f64,
    /// `(a + 1)π/2`.
    pub alpha: f64,
}

pub fn params(a: f64) -> Result<SchwarzParams> {
    let a = check_interval(a)?;
    let angle = FRAC_PI_4 * (a + 1.0);
    Ok(SchwarzParams {
        a,
        s: angle.tan(),
        e: 1.0 / angle.tan(),
        alpha: FRAC_PI_2 * (a + 1.0),
    })
}

pub(crate) fn strip_parameter(a: f64) -> f64 {
    (FRAC_PI_4 * (a + 1.0)).tan()
}

fn check_radius(r: f64) -> Result<f64> {
    if (0.0..1.0).contains(&r) {
        Ok(r)
    } else {
        Err(Error::RadiusOutOfRange { radius: r })
    }
}

/// Upper envelope `X⁺(r, a) = (4/π) arctan(s (1+r)/(1-r)) - 1`.
pub fn x_plus(r: f64, a: f64) -> Result<f64> {
    let r = check_radius(r)?;
    let s = params(a)?.s;
    Ok(FOUR_OVER_PI * (s * (1.0 + r) / (1.0 - r)).atan() - 1.0)
}

/// Lower envelope `X⁻(r, a) = 1 - (4/π) arctan(e (1+r)/(1-r))`.
pub fn x_minus(r: f64, a: f64) -> Result<f64> {
    let r = check_radius(r)?;
    let e = params(a)?.e;
    Ok(1.0 - FOUR_OVER_PI * (e * (1.0 + r) / (1.0 - r)).atan())
}

/// `∂X⁺/∂r = (4/π) 2s / ((1-r)² + s²(1+r)²)`.
pub fn x_plus_deriv(r: f64, a: f64) -> Result<f64> {
    let r = check_radius(r)?;
    let s = params(a)?.s;
    let (m, p) = (1.0 - r, 1.0 + r);
    Ok(FOUR_OVER_PI * 2.0 * s / (m * m + s * s * p * p))
}

/// `∂X⁻/∂r = -(4/π) 2s / ((1+r)² + s²(1-r)²)`.
pub fn x_minus_deriv(r: f64, a: f64) -> Result<f64> {
    let r = check_radius(r)?;
    let s = params(a)?.s;
    let (m, p) = (1.0 - r, 1.0 + r);
    Ok(-FOUR_OVER_PI * 2.0 * s / (p * p + s * s * m * m))
}

/// Sharp bound `(4/π) sin α(a)` for `|∇h(0)|` when `h(0) = a`.
pub fn gradient_bound_origin(a: f64) -> Result<f64> {
    Ok(FOUR_OVER_PI * params(a)?.alpha.sin())
}

fn check_disk(z: C64) -> Result<f64> {
    let m = z.norm();
    if m < 1.0 {
        Ok(m)
    } else {
        Err(Error::OutsideDisk { modulus: m })
    }
}

/// Sharp bound `(4/π) sin α(|b|) / (1 - |z|²)` for `|∇h(z)|` when `h(z) = b`.
pub fn gradient_bound_interior(z: C64, b: f64) -> Result<f64> {
    let m = check_disk(z)?;
    Ok(gradient_bound_origin(check_interval(b)?.abs())? / (1.0 - m * m))
}

/// `(4/π) / (1 - |z|²)`, the bound over all maps into `(-1, 1)`.
pub fn khavinson_bound(z: C64) -> Result<f64> {
    let m = check_disk(z)?;
    Ok(FOUR_OVER_PI / (1.0 - m * m))
}

/// `2 / (s(a0) π)`, the lower bound for `Λ_f(b)` at a boundary point `b`
/// fixed on the circle, where `a0 = |f(0)|`.
pub fn boundary_bound(a0: f64) -> Result<f64> {
    Ok(2.0 / (params(a0)?.s * PI))
}

/// Upper bound for `h(z)` when `h(a) = b`:
/// `(4/π) arctan((1 + ρ)/(1 - ρ) · tan(α(|b|)/2)) - 1` with `ρ = |φ_a(z)|`.
pub fn interior_envelope(z: C64, a: C64, b: f64) -> Result<f64> {
    check_disk(z)?;
    if a.norm() >= 1.0 {
        return Err(Error::BadDiskPoint { modulus: a.norm() });
    }
    let rho = disk_automorphism(a, z).norm();
    let half = params(check_interval(b)?.abs())?.alpha / 2.0;
    Ok(FOUR_OVER_PI * ((1.0 + rho) / (1.0 - rho) * half.tan()).atan() - 1.0)
}

/// Upper and lower envelope slacks over a polar grid.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeReport {
    /// The value at the origin.
    pub a: f64,
    /// `h <= X⁺(|z|, a)`.
    pub upper: Check,
    /// `X⁻(|z|, a) <= h`.
    pub lower: Check,
}

impl EnvelopeReport {
    pub fn pass(&self) -> bool {
        self.upper.pass && self.lower.pass
    }
}

fn polar_grid<'a>(rgrid: &'a [f64], thetagrid: &'a [f64]) -> impl Iterator<Item = (f64, C64)> + 'a {
    rgrid
        .iter()
        .flat_map(move |&r| thetagrid.iter().map(move |&t| (r, C64::from_polar(r, t))))
}

/// Checks `X⁻(|z|, a) <= h(z) <= X⁺(|z|, a)` for the real part of a scalar map.
pub fn envelope_check(
    h: &VectorHarmonicMap,
    rgrid: &[f64],
    thetagrid: &[f64],
) -> Result<EnvelopeReport> {
    if h.dimension() != 1 {
        return Err(Error::SpecViolation("envelope check needs a real-valued map"));
    }
    let f = &h.components()[0];
    let a = check_interval(f.coeff(0).re)?;
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (r, z) in polar_grid(rgrid, thetagrid) {
        let v = f.eval(z).re;
        if v.abs() > 1.0 + SLACK_TOLERANCE {
            return Err(Error::RangeViolation { excess: v.abs() - 1.0 });
        }
        upper.push((v, x_plus(r, a)?));
        lower.push((x_minus(r, a)?, v));
    }
    Ok(EnvelopeReport {
        a,
        upper: Check::worst("envelope_upper", upper, SLACK_TOLERANCE),
        lower: Check::worst("envelope_lower", lower, SLACK_TOLERANCE),
    })
}

/// Checks `|f(z)| <= X⁺(|z|, |f(0)|)` for a planar map into the disk.
pub fn modulus_envelope_check(
    f: &PlanarHarmonicMap,
    rgrid: &[f64],
    thetagrid: &[f64],
) -> Result<Check> {
    let a = f.eval(C64::new(0.0, 0.0)).norm();
    if a >= 1.0 {
        return Err(Error::RangeViolation { excess: a - 1.0 });
    }
    let mut pairs = Vec::new();
    for (r, z) in polar_grid(rgrid, thetagrid) {
        let m = f.eval(z).norm();
        if m > 1.0 + SLACK_TOLERANCE {
            return Err(Error::RangeViolation { excess: m - 1.0 });
        }
        pairs.push((m, x_plus(r, a)?));
    }
    Ok(Check::worst("modulus_envelope", pairs, SLACK_TOLERANCE))
}

/// Radius at which boundary values are read.
pub const BOUNDARY_RADIUS: f64 = 1.0 - 1e-8;

/// Steps of the one-sided radial differences.
pub const RADIAL_STEPS: [f64; 3] = [1e-3, 5e-4, 2.5e-4];

/// Boundary Schwarz data at a point `b` of the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub value: C64,
    /// Extrapolated radial derivative `f'_r(b)`.
    pub radial_derivative: C64,
    pub lambda: f64,
    pub bound: f64,
    /// `bound <= |f'_r(b)|`.
    pub radial: Check,
    /// `|f'_r(b)| <= Λ_f(b)`.
    pub stretch: Check,
}

impl BoundaryReport {
    pub fn pass(&self) -> bool {
        self.radial.pass && self.stretch.pass
    }
}

/// Second-order Richardson extrapolation of a first-order scheme sampled at
/// steps `h`, `h/2`, `h/4`.
pub fn richardson3(d: [C64; 3]) -> C64 {
    let r1 = d[1] * 2.0 - d[0];
    let r2 = d[2] * 2.0 - d[1];
    (r2 * 4.0 - r1) / 3.0
}

/// Checks `Λ_f(b) >= |f'_r(b)| >= 2/(s(|f(0)|) π)` at a boundary point that
/// `f` maps to the unit circle.
pub fn boundary_derivative_check(f: &PlanarHarmonicMap, b: C64) -> Result<BoundaryReport> {
    if (b.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::SpecViolation("boundary point must lie on the unit circle"));
    }
    let a0 = f.eval(C64::new(0.0, 0.0)).norm();
    let bound = boundary_bound(a0)?;
    let rb = BOUNDARY_RADIUS;
    let value = f.eval(b * rb);
    if value.norm() < 1.0 - 1e-4 {
        return Err(Error::NotBoundaryFixed { modulus: value.norm() });
    }
    let diffs = RADIAL_STEPS.map(|h| (value - f.eval(b * (rb - h))) / h);
    let radial_derivative = richardson3(diffs);
    let lambda = f.dilatations(b * rb).lambda_max;
    let rd = radial_derivative.norm();
    Ok(BoundaryReport {
        value,
        radial_derivative,
        lambda,
        bound,
        radial: Check::new("boundary_radial", bound, rd, SLACK_TOLERANCE),
        stretch: Check::new("boundary_stretch", rd, lambda, 1e-6),
    })
}

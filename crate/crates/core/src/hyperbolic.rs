//! Hyperbolic densities and distances on the unit disk and on the strip
//! `S_0 = (-1, 1) x R`.

use core::f64::consts::FRAC_PI_2;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{check_interval, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::report::Check;
use crate::schwarz::strip_parameter;
use crate::series::ComplexSeries;
use crate::{C64, SLACK_TOLERANCE};

/// Densities are not evaluated closer than this to the boundary.
pub const BOUNDARY_GUARD: f64 = 1e-12;

/// A point of the strip `-1 < Re w < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StripPoint(C64);

impl StripPoint {
    pub fn new(w: C64) -> Result<Self> {
        if w.re.abs() < 1.0 - BOUNDARY_GUARD {
            Ok(StripPoint(w))
        } else {
            Err(Error::OutsideStrip { re: w.re })
        }
    }

    pub fn value(self) -> C64 {
        self.0
    }
}

/// `(pi/2) sec(pi Re w / 2)`.
pub fn strip_density(w: StripPoint) -> f64 {
    FRAC_PI_2 / (FRAC_PI_2 * w.0.re).cos()
}

/// Closed-form distance `|ln(s(u2) / s(u1))|` between real points of the strip.
pub fn strip_distance(u1: f64, u2: f64) -> Result<f64> {
    let (u1, u2) = (check_interval(u1)?, check_interval(u2)?);
    Ok((strip_parameter(u2) / strip_parameter(u1)).ln().abs())
}

/// Gauss–Legendre integral of the strip density along `[u1, u2]`.
pub fn strip_distance_quadrature(u1: f64, u2: f64, nodes: usize) -> Result<f64> {
    let (u1, u2) = (check_interval(u1)?, check_interval(u2)?);
    let (lo, hi) = if u1 <= u2 { (u1, u2) } else { (u2, u1) };
    if lo == hi {
        return Ok(0.0);
    }
    let rule = GaussLegendre::new(nodes);
    Ok(rule.integrate(lo, hi, |u| FRAC_PI_2 / (FRAC_PI_2 * u).cos()))
}

/// `2 / (1 - |z|^2)`.
pub fn disk_density(z: C64) -> Result<f64> {
    let m = z.norm();
    if m < 1.0 - BOUNDARY_GUARD {
        Ok(2.0 / (1.0 - m * m))
    } else {
        Err(Error::OutsideDisk { modulus: m })
    }
}

/// Schwarz–Pick for a holomorphic `ω: U -> S_0`:
/// `ρ_0(ω(z)) |ω'(z)| <= 2 / (1 - |z|^2)` on every grid point.
pub fn schwarz_pick_check(omega: &ComplexSeries, zgrid: &[C64]) -> Result<Check> {
    let mut pairs = alloc::vec::Vec::with_capacity(zgrid.len());
    for &z in zgrid {
        let rhs = disk_density(z)?;
        let (w, dw) = omega.eval_with_derivative(z);
        let point = StripPoint::new(w).map_err(|_| Error::RangeViolation {
            excess: w.re.abs() - 1.0,
        })?;
        pairs.push((strip_density(point) * dw.norm(), rhs));
    }
    Ok(Check::worst("schwarz_pick", pairs, SLACK_TOLERANCE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use core::f64::consts::PI;

    #[test]
    fn density_examples() {
        let origin = StripPoint::new(C64::new(0.0, 0.0)).unwrap();
        assert!((strip_density(origin) - FRAC_PI_2).abs() < 1e-15);
        let high = StripPoint::new(C64::new(0.0, 7.3)).unwrap();
        assert_eq!(strip_density(high), strip_density(origin));
        let half = StripPoint::new(C64::new(0.5, 0.0)).unwrap();
        assert!((strip_density(half) - PI / 2f64.sqrt()).abs() < 1e-14);
        assert!(matches!(StripPoint::new(C64::new(1.0, 0.0)), Err(Error::OutsideStrip { .. })));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(strip_distance(0.3, 0.3).unwrap(), 0.0);
        let d = strip_distance(0.0, 0.5).unwrap();
        assert!((d - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-15);
        assert!((d - 0.881374).abs() < 1e-6);
        assert!(strip_distance(0.0, 1.0).is_err());
    }

    #[test]
    fn distance_is_symmetric() {
        for j in 0..20 {
            let a = ((j as f64) * 0.731).sin() * 0.95;
            let b = ((j as f64) * 1.913).cos() * 0.95;
            let d = strip_distance(a, b).unwrap();
            assert!((d - strip_distance(b, a).unwrap()).abs() < 1e-14);
            assert!((d - strip_distance(-a, -b).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let q = strip_distance_quadrature(0.0, 0.5, 64).unwrap();
        assert!((q - strip_distance(0.0, 0.5).unwrap()).abs() < 1e-10);
        assert_eq!(strip_distance_quadrature(0.2, 0.2, 64).unwrap(), 0.0);
        let q = strip_distance_quadrature(-0.3, 0.7, 64).unwrap();
        assert!((q - strip_distance(-0.3, 0.7).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn quadrature_agrees_on_random_pairs() {
        for j in 0..50 {
            let a = ((j as f64) * 12.9898).sin() * 0.9;
            let b = ((j as f64) * 78.233).sin() * 0.9;
            let q = strip_distance_quadrature(a, b, 64).unwrap();
            assert!((q - strip_distance(a, b).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn disk_density_examples() {
        assert_eq!(disk_density(C64::new(0.0, 0.0)).unwrap(), 2.0);
        assert!((disk_density(C64::new(0.5, 0.0)).unwrap() - 8.0 / 3.0).abs() < 1e-15);
        let z = C64::from_polar(0.6, 2.1);
        assert!((disk_density(z).unwrap() - disk_density(C64::new(0.6, 0.0)).unwrap()).abs() < 1e-14);
        assert!(disk_density(C64::new(1.0, 0.0)).is_err());
    }

    fn grid() -> Vec<C64> {
        (0..100)
            .map(|j| C64::from_polar(0.9 * ((j % 10) as f64 + 0.5) / 10.0, 0.628 * (j / 10) as f64))
            .collect()
    }

    #[test]
    fn schwarz_pick_equality_for_strip_map() {
        let strip = crate::extremal::strip_map(512);
        let check = schwarz_pick_check(&strip, &grid()).unwrap();
        assert!(check.slack.abs() < 1e-8, "{check:?}");
    }

    #[test]
    fn schwarz_pick_constant_and_composition() {
        let zero = ComplexSeries::zero();
        let check = schwarz_pick_check(&zero, &grid()).unwrap();
        assert!(check.slack > 0.0 && check.lhs == 0.0);

        let squared = crate::extremal::strip_map(256).substitute_power(2);
        assert!(schwarz_pick_check(&squared, &grid()).unwrap().pass);
    }

    #[test]
    fn schwarz_pick_range_violation() {
        let wide = ComplexSeries::from_real(&[0.0, 3.0]);
        let err = schwarz_pick_check(&wide, &grid()).unwrap_err();
        assert!(matches!(err, Error::RangeViolation { .. }));
    }

    #[test]
    fn density_at_least_half_pi() {
        for j in 0..200 {
            let w = C64::new(-0.999 + 1.998 * j as f64 / 199.0, j as f64);
            assert!(strip_density(StripPoint::new(w).unwrap()) >= FRAC_PI_2);
        }
    }
}

//! Tangent-plane projection of maps into `R^m`: rotate so the tangent plane
//! at `u(z0)` becomes a coordinate plane, drop the normal coordinates and
//! treat the result as a planar harmonic map.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{diameter, length, stretches, Resolution};
use crate::report::Check;
use crate::series::{ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap};
use crate::{C64, SLACK_TOLERANCE};

/// Default relative tolerance of [`conformal_at`].
pub const CONFORMAL_TOLERANCE: f64 = 1e-8;

/// Relative size of the smaller singular value below which the differential
/// is treated as rank-deficient.
const RANK_TOLERANCE: f64 = 1e-10;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Whether `|D_1 u| = |D_2 u|` and `D_1 u ⟂ D_2 u` at `z0` up to `tol`
/// (relative), or both partial derivatives vanish.
pub fn conformal_at(u: &VectorHarmonicMap, z0: C64, tol: f64) -> bool {
    let (d1, d2) = u.vector_frame(z0);
    let (n1, n2) = (norm(&d1), norm(&d2));
    if n1 == 0.0 && n2 == 0.0 {
        return true;
    }
    (n1 - n2).abs() <= tol * (n1 + n2) && dot(&d1, &d2).abs() <= tol * n1 * n2
}

/// Orthonormal frame adapted to the tangent plane at `u(z0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentFrame {
    /// `u(z0)`.
    pub origin: Vec<f64>,
    /// Orthonormal basis of `span{D_1 u, D_2 u}` by Gram–Schmidt.
    pub basis: [Vec<f64>; 2],
    /// Orthonormal completion, `m - 2` vectors.
    pub normal_complement: Vec<Vec<f64>>,
}

impl TangentFrame {
    /// Coordinates of `y - origin` in the frame, tangent coordinates first.
    pub fn coordinates(&self, y: &[f64]) -> Vec<f64> {
        let shifted: Vec<f64> = y.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        self.basis
            .iter()
            .chain(&self.normal_complement)
            .map(|e| dot(e, &shifted))
            .collect()
    }
}

/// Subtracts the components along `basis` twice, for orthogonality to
/// working precision.
fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for e in basis {
            let c = dot(v, e);
            v.iter_mut().zip(e).for_each(|(x, y)| *x -= c * y);
        }
    }
}

pub fn tangent_frame(u: &VectorHarmonicMap, z0: C64) -> Result<TangentFrame> {
    let m = u.dimension();
    if m < 2 {
        return Err(Error::DegeneratePoint);
    }
    let (big, small) = stretches(u, z0);
    if big == 0.0 || small <= RANK_TOLERANCE * big {
        return Err(Error::DegeneratePoint);
    }
    let (d1, d2) = u.vector_frame(z0);
    let mut spanning: Vec<Vec<f64>> = Vec::with_capacity(m);
    for mut v in [d1, d2] {
        orthogonalize(&mut v, &spanning);
        let n = norm(&v);
        v.iter_mut().for_each(|x| *x /= n);
        spanning.push(v);
    }
    while spanning.len() < m {
        let best = (0..m)
            .map(|k| {
                let mut v = vec![0.0; m];
                v[k] = 1.0;
                orthogonalize(&mut v, &spanning);
                v
            })
            .max_by(|a, b| norm(a).total_cmp(&norm(b)))
            .expect("m >= 2");
        let n = norm(&best);
        spanning.push(best.into_iter().map(|x| x / n).collect());
    }
    let normal_complement = spanning.split_off(2);
    let e2 = spanning.pop().expect("two tangent vectors");
    let e1 = spanning.pop().expect("two tangent vectors");
    Ok(TangentFrame { origin: u.eval(z0), basis: [e1, e2], normal_complement })
}

/// The planar map `z ↦ (e_1 · (u - origin), e_2 · (u - origin))`.
pub fn project(u: &VectorHarmonicMap, frame: &TangentFrame) -> PlanarHarmonicMap {
    let combine = |e: &[f64], shift: f64| -> ComplexSeries {
        let mut acc = ComplexSeries::constant(C64::new(-shift, 0.0));
        for (f, &w) in u.components().iter().zip(e) {
            acc = acc.add(&f.scale(C64::new(w, 0.0)));
        }
        acc
    };
    let [e1, e2] = &frame.basis;
    let f1 = combine(e1, dot(e1, &frame.origin));
    let f2 = combine(e2, dot(e2, &frame.origin));
    let planar = VectorHarmonicMap::new(vec![f1, f2]).expect("two components");
    PlanarHarmonicMap::from_vector(&planar).expect("two components")
}

/// Interior bounds at `z0` for `u_r`:
/// `π(1-|z0|^2) Λ_u(z0) <= 2d`, the same with the projected map and its
/// diameter, `2π(1-|z0|^2) λ(z0) <= L` for the projected map, and at conformal
/// points `2π(1-|z0|^2) |∂_x u(z0)| <= L`.
pub fn interior_vector_check(
    u: &VectorHarmonicMap,
    z0: C64,
    r: f64,
    res: &Resolution,
) -> Result<Vec<Check>> {
    let m0 = z0.norm();
    if m0 >= 1.0 {
        return Err(Error::OutsideDisk { modulus: m0 });
    }
    let factor = 1.0 - m0 * m0;
    let ur = u.dilate(r);
    let d = diameter(u, r, res.diameter)?;
    let l = length(u, r, res.boundary)?;
    let (big, _) = stretches(&ur, z0);
    let mut checks = vec![Check::new("tangent_diameter", PI * factor * big, 2.0 * d, SLACK_TOLERANCE)];
    // the frame of u at r z0 is the frame of u_r at z0
    match tangent_frame(u, z0 * r) {
        Ok(frame) => {
            let projected = project(u, &frame);
            let dz = diameter(&projected.to_vector(), r, res.diameter)?;
            let dil = projected.dilate(r).dilatations(z0);
            checks.push(Check::new(
                "tangent_projected_diameter",
                PI * factor * dil.lambda_max,
                2.0 * dz,
                SLACK_TOLERANCE,
            ));
            checks.push(Check::new(
                "tangent_min_stretch",
                2.0 * PI * factor * dil.lambda_min,
                l,
                SLACK_TOLERANCE,
            ));
        }
        Err(Error::DegeneratePoint) => {}
        Err(e) => return Err(e),
    }
    if conformal_at(&ur, z0, CONFORMAL_TOLERANCE) {
        let (d1, _) = ur.vector_frame(z0);
        checks.push(Check::new(
            "tangent_conformal",
            2.0 * PI * factor * norm(&d1),
            l,
            SLACK_TOLERANCE,
        ));
    }
    Ok(checks)
}

//! Extremal and witness maps: conformal maps onto the strip, `u_d`, `û`,
//! the `f^ν` and `f_H` families, circle maps and a boundary-collapse example.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{check_interval, Error, Result};
use crate::series::{ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap};
use crate::{C64, SLACK_TOLERANCE};

const FOUR_OVER_PI: f64 = 4.0 / PI;
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Circle radius and sample count for admissibility checks.
pub const ADMISSIBILITY_RADIUS: f64 = 0.999;
pub const ADMISSIBILITY_SAMPLES: usize = 512;

/// Coefficients up to this modulus count as zero in order conditions.
const ORDER_TOLERANCE: f64 = 1e-14;

fn vanishes_to_order_two(s: &ComplexSeries) -> bool {
    s.coeff(0).norm() <= ORDER_TOLERANCE && s.coeff(1).norm() <= ORDER_TOLERANCE
}

/// `F_0(z) = (4/π) arctan z`, the conformal map of the disk onto the strip
/// `-1 < Re w < 1`, truncated at degree `n`.
pub fn strip_map(n: usize) -> ComplexSeries {
    let coeffs = (0..=n)
        .map(|k| {
            if k % 2 == 1 {
                let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                C64::new(FOUR_OVER_PI * sign / k as f64, 0.0)
            } else {
                ZERO
            }
        })
        .collect();
    ComplexSeries::new(coeffs)
}

/// Conformal map of the disk onto the strip with `z0 ↦ b` and positive
/// derivative at `z0`: `F_0 ∘ σ ∘ T_{z0}` with `T_{z0}(z) = (z - z0)/(1 - conj(z0) z)`
/// and `σ(ζ) = (ζ + w0)/(1 + w0 ζ)`, `w0 = tan(πb/4)`.
///
/// Writing the Möbius part as `(αz + β)/(γz + δ)`, the coefficients are
/// `(4/π)(1/2i)(-1)^{k+1}(p^k - q^k)/k` with `p = (γ + iα)/(δ + iβ)` and
/// `q = (γ - iα)/(δ - iβ)`.
pub fn strip_conformal(z0: C64, b: f64, n: usize) -> Result<ComplexSeries> {
    if z0.norm() >= 1.0 {
        return Err(Error::BadDiskPoint { modulus: z0.norm() });
    }
    let w0 = C64::new((FRAC_PI_4 * check_interval(b)?).tan(), 0.0);
    let alpha = ONE - w0 * z0.conj();
    let beta = w0 - z0;
    let gamma = w0 - z0.conj();
    let delta = ONE - w0 * z0;
    let i = C64::new(0.0, 1.0);
    let p = (gamma + i * alpha) / (delta + i * beta);
    let q = (gamma - i * alpha) / (delta - i * beta);
    let scale = C64::new(FOUR_OVER_PI, 0.0) / (i * 2.0);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push((beta / delta).atan() * FOUR_OVER_PI);
    let (mut pk, mut qk) = (ONE, ONE);
    for k in 1..=n {
        pk *= p;
        qk *= q;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        coeffs.push(scale * (pk - qk) * (sign / k as f64));
    }
    Ok(ComplexSeries::new(coeffs))
}

/// `2 Σ_{k odd} z^k / k = log((1 + z)/(1 - z))`.
fn log_ratio_series(n: usize) -> Vec<C64> {
    (0..=n)
        .map(|k| if k % 2 == 1 { C64::new(2.0 / k as f64, 0.0) } else { ZERO })
        .collect()
}

/// `u_d(z) = (d/π) arg((1 + z)/(1 - z))`, with analytic completion
/// `-i (d/π) log((1 + z)/(1 - z))`.
pub fn u_d_map(d: f64, n: usize) -> Result<VectorHarmonicMap> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::SpecViolation("u_d needs a positive diameter"));
    }
    let factor = C64::new(0.0, -d / PI);
    let coeffs = log_ratio_series(n).into_iter().map(|c| c * factor).collect();
    Ok(VectorHarmonicMap::scalar(ComplexSeries::new(coeffs)))
}

/// `û(z) = (2/π) arg((1 + iz)/(1 - iz))`, whose analytic completion is
/// `(4/π) arctan z`.
pub fn u_hat_map(n: usize) -> VectorHarmonicMap {
    VectorHarmonicMap::scalar(strip_map(n))
}

/// Checks that `s` maps the admissibility circle into the closed unit disk.
fn is_self_map(s: &ComplexSeries) -> bool {
    s.sample_circle(ADMISSIBILITY_RADIUS, ADMISSIBILITY_SAMPLES)
        .iter()
        .all(|v| v.norm() <= 1.0 + SLACK_TOLERANCE)
}

/// Datum `ω` of the `f^ν` family: a holomorphic self-map of the disk
/// vanishing to order two at the origin, with `ν = ω / z^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct NuSpec {
    omega: ComplexSeries,
}

impl NuSpec {
    pub fn new(omega: ComplexSeries) -> Result<Self> {
        if !vanishes_to_order_two(&omega) {
            return Err(Error::SpecViolation("omega must vanish to order two at the origin"));
        }
        if !is_self_map(&omega) {
            return Err(Error::SpecViolation("omega must map the disk into itself"));
        }
        Ok(NuSpec { omega })
    }

    pub fn omega(&self) -> &ComplexSeries {
        &self.omega
    }

    pub fn nu(&self) -> ComplexSeries {
        self.omega.shift_down(2)
    }

    /// `H = ω / (1 + ω)`, the matching datum of the `f_H` family.
    pub fn h_datum(&self, n: usize) -> Result<ComplexSeries> {
        let recip = ComplexSeries::constant(ONE).add(&self.omega).reciprocal(n)?;
        Ok(self.omega.mul_truncated(&recip, n))
    }
}

/// Datum `(H, a)` of the `f_H` family: `H` vanishes to order two at the
/// origin and `Re 2H < Re a` on the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct HSpec {
    h: ComplexSeries,
    a: C64,
}

impl HSpec {
    pub fn new(h: ComplexSeries, a: C64) -> Result<Self> {
        if !vanishes_to_order_two(&h) {
            return Err(Error::SpecViolation("H must vanish to order two at the origin"));
        }
        let sup = h
            .sample_circle(ADMISSIBILITY_RADIUS, ADMISSIBILITY_SAMPLES)
            .iter()
            .map(|v| 2.0 * v.re)
            .fold(f64::NEG_INFINITY, f64::max);
        if sup > a.re + SLACK_TOLERANCE {
            return Err(Error::SpecViolation("Re 2H must stay below Re a"));
        }
        Ok(HSpec { h, a })
    }

    pub fn h(&self) -> &ComplexSeries {
        &self.h
    }

    pub fn a(&self) -> C64 {
        self.a
    }
}

/// `f^ν = g + conj(h)` with `g' = 1/(1 + ω)`, `h' = ν/(1 + ω)` and
/// `g(0) = h(0) = 0`.
pub fn f_nu(spec: &NuSpec, n: usize) -> Result<PlanarHarmonicMap> {
    let recip = ComplexSeries::constant(ONE).add(&spec.omega).reciprocal(n)?;
    let h_prime = spec.nu().mul_truncated(&recip, n);
    Ok(PlanarHarmonicMap::new(recip.antiderivative(ZERO), h_prime.antiderivative(ZERO)))
}

/// `f_H = g + conj(h)` with `g' = a - H`, `h' = H / z^2` and `g(0) = h(0) = 0`.
pub fn f_h(spec: &HSpec, n: usize) -> PlanarHarmonicMap {
    let h = spec.h.truncated(n);
    let g_prime = ComplexSeries::constant(spec.a).sub(&h);
    PlanarHarmonicMap::new(g_prime.antiderivative(ZERO), h.shift_down(2).antiderivative(ZERO))
}

/// `u_k = a_k x - b_k y`, i.e. `F_k = (a_k + i b_k) z`; the image of every
/// circle is a round circle when `|a| = |b|` and `a · b = 0`.
pub fn circle_map(a: &[f64], b: &[f64]) -> Result<VectorHarmonicMap> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::SpecViolation("circle map needs vectors of one common length"));
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (na - nb).abs() > 1e-12 || dot.abs() > 1e-12 {
        return Err(Error::SpecViolation("circle map needs |a| = |b| and a · b = 0"));
    }
    let components = a
        .iter()
        .zip(b)
        .map(|(&ak, &bk)| ComplexSeries::new(vec![ZERO, C64::new(ak, bk)]))
        .collect();
    VectorHarmonicMap::new(components)
}

/// `f = Re l + i Im s` with `l(z) = z/(1 - z)` and
/// `s(z) = (1/2) log((1 + z)/(1 - z))`; as a planar map `g = (l + s)/2`,
/// `h = (l - s)/2`. The upper half of the circle collapses to
/// `-1/2 + iπ/4`.
pub fn duren_example(n: usize) -> PlanarHarmonicMap {
    let mut g = Vec::with_capacity(n + 1);
    let mut h = Vec::with_capacity(n + 1);
    g.push(ZERO);
    h.push(ZERO);
    for k in 1..=n {
        let s = if k % 2 == 1 { 1.0 / k as f64 } else { 0.0 };
        g.push(C64::new((1.0 + s) / 2.0, 0.0));
        h.push(C64::new((1.0 - s) / 2.0, 0.0));
    }
    PlanarHarmonicMap::new(ComplexSeries::new(g), ComplexSeries::new(h))
}

/// The collapsed boundary value of [`duren_example`].
pub fn duren_collapse_point() -> C64 {
    C64::new(-0.5, FRAC_PI_4)
}

/// `min_t Re X(t)` on `|z| = r`, where `X(t) = g'(z) - conj(h'(z) e^{2it})`;
/// nonnegative exactly for the maps with `2π|g'(0)| = L`.
pub fn equality_indicator(f: &PlanarHarmonicMap, r: f64, n: usize) -> f64 {
    let gp = f.g.derivative().sample_circle(r, n);
    let hp = f.h.derivative().sample_circle(r, n);
    gp.iter()
        .zip(&hp)
        .enumerate()
        .map(|(j, (g, h))| {
            let t = 2.0 * PI * j as f64 / n as f64;
            (g - (h * C64::from_polar(1.0, 2.0 * t)).conj()).re
        })
        .fold(f64::INFINITY, f64::min)
}

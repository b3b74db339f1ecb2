//! Truncated power series and the harmonic-map data model.
//!
//! A planar harmonic map is stored as `f = g + conj(h)`; a vector map into
//! `R^m` as the list of analytic completions `F_k` with `u_k = Re F_k`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fft;
use crate::C64;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Truncated Taylor series `sum_k coeffs[k] z^k`.
///
/// Trailing zeros are kept; arithmetic never renormalizes.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries {
    coeffs: Vec<C64>,
}

impl ComplexSeries {
    /// Builds a series from its coefficients; an empty list is the zero series.
    pub fn new(coeffs: Vec<C64>) -> Self {
        if coeffs.is_empty() {
            ComplexSeries { coeffs: vec![ZERO] }
        } else {
            ComplexSeries { coeffs }
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![ZERO])
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// The identity `z`.
    pub fn identity() -> Self {
        Self::new(vec![ZERO, ONE])
    }

    /// `c z^k`.
    pub fn monomial(c: C64, k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k`, zero past the truncation.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut value = ZERO;
        let mut deriv = ZERO;
        for c in self.coeffs.iter().rev() {
            deriv = deriv * z + value;
            value = value * z + c;
        }
        (value, deriv)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Termwise integral with constant term `c0`.
    pub fn antiderivative(&self, c0: C64) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(c0);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k + 1) as f64),
        );
        Self::new(coeffs)
    }

    /// The series `t` of degree `n` with `self * t = 1 + O(z^{n+1})`.
    pub fn reciprocal(&self, n: usize) -> Result<Self> {
        let s0 = self.coeffs[0];
        if s0.norm() < 1e-14 {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = s0.inv();
        let mut t = Vec::with_capacity(n + 1);
        t.push(inv0);
        for j in 1..=n {
            let upper = j.min(self.degree());
            let acc = (1..=upper).fold(ZERO, |acc, k| acc + self.coeffs[k] * t[j - k]);
            t.push(-acc * inv0);
        }
        Ok(Self::new(t))
    }

    /// Product truncated to degree `n`.
    pub fn mul_truncated(&self, other: &Self, n: usize) -> Self {
        let mut out = vec![ZERO; n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if *a == ZERO {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    /// Division by `z^k`; the first `k` coefficients are dropped.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).copied().collect())
    }

    /// `s(z^m)`.
    pub fn substitute_power(&self, m: usize) -> Self {
        assert!(m >= 1);
        let mut coeffs = vec![ZERO; self.degree() * m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * m] = *c;
        }
        Self::new(coeffs)
    }

    /// `s(r z)`.
    pub fn dilate(&self, r: f64) -> Self {
        let mut rk = 1.0;
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let v = c * rk;
                    rk *= r;
                    v
                })
                .collect(),
        )
    }

    /// Keeps coefficients up to degree `n`, padding with zeros.
    pub fn truncated(&self, n: usize) -> Self {
        Self::new((0..=n).map(|k| self.coeff(k)).collect())
    }

    /// Values on the circle `|z| = r` at `n` uniform angles.
    pub fn sample_circle(&self, r: f64, n: usize) -> Vec<C64> {
        fft::sample_on_circle(&self.coeffs, r, n)
    }

    /// Truncated Taylor series of `s ∘ φ_a`, `φ_a(z) = (a - z) / (1 - conj(a) z)`.
    ///
    /// The composition is sampled on a circle and its coefficients recovered by
    /// [`coefficients_from_samples`]. The sampling radius is `0.5` unless the
    /// requested degree needs a larger one to keep the noise amplification
    /// `radius^-n` below `1e6`.
    pub fn mobius_precompose(&self, a: C64, n: usize) -> Result<Self> {
        let radius = 0.5f64.max((1e-6f64.ln() / n.max(1) as f64).exp());
        let samples = 1024usize.max(fft::next_power_of_two(2 * (n + 1)));
        self.mobius_precompose_with(a, n, MobiusSampling { radius, samples })
    }

    pub fn mobius_precompose_with(
        &self,
        a: C64,
        n: usize,
        sampling: MobiusSampling,
    ) -> Result<Self> {
        if a.norm() >= 1.0 {
            return Err(Error::BadDiskPoint { modulus: a.norm() });
        }
        if sampling.samples < 2 * (n + 1) {
            return Err(Error::InvalidSampleCount(sampling.samples));
        }
        let r = sampling.radius;
        let composed = coefficients_from_samples(
            |t| self.eval(disk_automorphism(a, C64::from_polar(r, t))),
            r,
            sampling.samples,
        )?;
        Ok(composed.truncated(n))
    }
}

/// Circle radius and sample count used by Möbius precomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusSampling {
    pub radius: f64,
    pub samples: usize,
}

/// `φ_a(z) = (a - z) / (1 - conj(a) z)`, the involutive disk automorphism
/// swapping `0` and `a`.
pub fn disk_automorphism(a: C64, z: C64) -> C64 {
    (a - z) / (ONE - a.conj() * z)
}

/// Taylor coefficients of an analytic function from samples on `|z| = r`.
///
/// `sampler(t)` must return the function value at `r e^{it}`. With `n`
/// samples (a power of two) the first `n / 2` coefficients are returned,
/// `coeffs[k] = DFT[k] / (n r^k)`.
pub fn coefficients_from_samples<F>(sampler: F, r: f64, n: usize) -> Result<ComplexSeries>
where
    F: Fn(f64) -> C64,
{
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::RadiusOutOfRange { radius: r });
    }
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidSampleCount(n));
    }
    let mut values: Vec<C64> = (0..n)
        .map(|j| sampler(2.0 * PI * j as f64 / n as f64))
        .collect();
    fft::fft_in_place(&mut values);
    let mut scale = 1.0 / n as f64;
    let coeffs = values
        .into_iter()
        .take(n / 2)
        .map(|v| {
            let c = v * scale;
            scale /= r;
            c
        })
        .collect();
    Ok(ComplexSeries::new(coeffs))
}

/// Pointwise differential data of a planar map `f = g + conj(h)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dilatations {
    /// `f_z = g'`.
    pub p: C64,
    /// `f_zbar = conj(h')`.
    pub q: C64,
    /// Maximal stretch `|p| + |q|`.
    pub lambda_max: f64,
    /// Minimal stretch `||p| - |q||`.
    pub lambda_min: f64,
    /// Jacobian `|p|^2 - |q|^2`.
    pub jacobian: f64,
}

impl Dilatations {
    pub fn from_derivatives(p: C64, q: C64) -> Self {
        let (ap, aq) = (p.norm(), q.norm());
        Dilatations {
            p,
            q,
            lambda_max: ap + aq,
            lambda_min: (ap - aq).abs(),
            jacobian: ap * ap - aq * aq,
        }
    }

    /// Complex dilatation `q / p`; `None` where `p = 0`.
    pub fn mu(&self) -> Option<C64> {
        (self.p != ZERO).then(|| self.q / self.p)
    }

    /// Distortion `(|p| + |q|) / (|p| - |q|)` for sense-preserving points.
    pub fn distortion(&self) -> Option<f64> {
        (self.jacobian > 0.0).then(|| self.lambda_max / self.lambda_min)
    }
}

/// Complex-valued harmonic map `f = g + conj(h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarHarmonicMap {
    pub g: ComplexSeries,
    pub h: ComplexSeries,
}

impl PlanarHarmonicMap {
    pub fn new(g: ComplexSeries, h: ComplexSeries) -> Self {
        PlanarHarmonicMap { g, h }
    }

    /// `f = g`, a holomorphic map.
    pub fn analytic(g: ComplexSeries) -> Self {
        PlanarHarmonicMap { g, h: ComplexSeries::zero() }
    }

    pub fn identity() -> Self {
        Self::analytic(ComplexSeries::identity())
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.g.eval(z) + self.h.eval(z).conj()
    }

    pub fn dilatations(&self, z: C64) -> Dilatations {
        let (_, gp) = self.g.eval_with_derivative(z);
        let (_, hp) = self.h.eval_with_derivative(z);
        Dilatations::from_derivatives(gp, hp.conj())
    }

    pub fn dilate(&self, r: f64) -> Self {
        PlanarHarmonicMap { g: self.g.dilate(r), h: self.h.dilate(r) }
    }

    pub fn scale(&self, c: f64) -> Self {
        let c = C64::new(c, 0.0);
        PlanarHarmonicMap { g: self.g.scale(c), h: self.h.scale(c) }
    }

    pub fn degree(&self) -> usize {
        self.g.degree().max(self.h.degree())
    }

    /// Real and imaginary parts as a map into `R^2`:
    /// `F_1 = g + h`, `F_2 = -i (g - h)`.
    pub fn to_vector(&self) -> VectorHarmonicMap {
        let minus_i = C64::new(0.0, -1.0);
        VectorHarmonicMap {
            components: vec![self.g.add(&self.h), self.g.sub(&self.h).scale(minus_i)],
        }
    }

    /// Planar map from a vector map with one or two components,
    /// `g = (F_1 + i F_2) / 2`, `h = (F_1 - i F_2) / 2`.
    pub fn from_vector(u: &VectorHarmonicMap) -> Result<Self> {
        let zero = ComplexSeries::zero();
        let (f1, f2) = match u.components.as_slice() {
            [f1] => (f1, &zero),
            [f1, f2] => (f1, f2),
            _ => return Err(Error::SpecViolation("planar view needs one or two components")),
        };
        let i = C64::new(0.0, 1.0);
        let half = C64::new(0.5, 0.0);
        Ok(PlanarHarmonicMap {
            g: f1.add(&f2.scale(i)).scale(half),
            h: f1.sub(&f2.scale(i)).scale(half),
        })
    }
}

/// Harmonic map into `R^m`, `u_k = Re F_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorHarmonicMap {
    components: Vec<ComplexSeries>,
}

impl VectorHarmonicMap {
    pub fn new(components: Vec<ComplexSeries>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::SpecViolation("vector map needs at least one component"));
        }
        Ok(VectorHarmonicMap { components })
    }

    /// Real-valued map `u = Re F`.
    pub fn scalar(f: ComplexSeries) -> Self {
        VectorHarmonicMap { components: vec![f] }
    }

    pub fn identity() -> Self {
        PlanarHarmonicMap::identity().to_vector()
    }

    pub fn components(&self) -> &[ComplexSeries] {
        &self.components
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components.iter().map(ComplexSeries::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, z: C64) -> Vec<f64> {
        self.components.iter().map(|f| f.eval(z).re).collect()
    }

    /// `F'(z)` componentwise.
    pub fn derivative_at(&self, z: C64) -> Vec<C64> {
        self.components
            .iter()
            .map(|f| f.eval_with_derivative(z).1)
            .collect()
    }

    /// Partial derivatives `(D_1 u, D_2 u)` from `u_x - i u_y = F'`.
    pub fn vector_frame(&self, z: C64) -> (Vec<f64>, Vec<f64>) {
        self.derivative_at(z).iter().map(|d| (d.re, -d.im)).unzip()
    }

    /// Angular derivative `d/dt u(z)` for `z = |z| e^{it}`: `Re(i z F'(z))`.
    pub fn angular_derivative(&self, z: C64) -> Vec<f64> {
        let iz = C64::new(0.0, 1.0) * z;
        self.derivative_at(z).iter().map(|d| (iz * d).re).collect()
    }

    pub fn dilate(&self, r: f64) -> Self {
        VectorHarmonicMap {
            components: self.components.iter().map(|f| f.dilate(r)).collect(),
        }
    }
}

/// Either kind of map, as read from or written to the map file format.
#[derive(Clone, Debug, PartialEq)]
pub enum HarmonicMap {
    Planar(PlanarHarmonicMap),
    Vector(VectorHarmonicMap),
}

impl HarmonicMap {
    pub fn to_vector(&self) -> VectorHarmonicMap {
        match self {
            HarmonicMap::Planar(f) => f.to_vector(),
            HarmonicMap::Vector(u) => u.clone(),
        }
    }

    /// Planar view when the target is at most two-dimensional.
    pub fn to_planar(&self) -> Option<PlanarHarmonicMap> {
        match self {
            HarmonicMap::Planar(f) => Some(f.clone()),
            HarmonicMap::Vector(u) => PlanarHarmonicMap::from_vector(u).ok(),
        }
    }
}

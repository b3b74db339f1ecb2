//! Seeded random harmonic maps.
//!
//! Every generator draws from a ChaCha8 stream seeded with a `u64`, so a map
//! is a pure function of `(seed, degree, target)` on every platform.
//! Coefficient `k >= 1` is a complex Gaussian with standard deviation `k^-2`
//! (variance `k^-4`).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use hdl_core::series::HarmonicMap;
use hdl_core::{ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap, C64};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Truncation degree of the interval-valued maps.
pub const INTERVAL_DEGREE: usize = 256;

/// Trailing coefficients of an interval-valued map below this are dropped.
pub const INTERVAL_TAIL: f64 = 1e-17;

/// Degree cap of the inner self-map used for interval-valued maps.
pub const INTERVAL_INNER_DEGREE: usize = 4;

/// Gap kept between the sup of a disk-valued map and the unit circle.
pub const DISK_MARGIN: f64 = 1e-3;

/// Samples used to find the boundary sup of a disk-valued map.
pub const DISK_SUP_SAMPLES: usize = 8192;

/// Which family of maps a fuzz campaign draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// Planar maps `g + conj(h)`.
    Planar,
    /// Maps into `R^3`; half of them are conformal at the origin.
    Vector3,
    /// Real maps into `(-1, 1)`.
    Interval,
    /// Planar maps into the unit disk.
    Disk,
}

impl Target {
    pub const ALL: [Target; 4] = [Target::Planar, Target::Vector3, Target::Interval, Target::Disk];

    pub fn name(self) -> &'static str {
        match self {
            Target::Planar => "planar",
            Target::Vector3 => "vector3",
            Target::Interval => "interval",
            Target::Disk => "disk",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown target `{s}` (expected planar, vector3, interval or disk)"))
    }
}

/// The generator behind every random map.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Random series of the given degree; `c0` scales the constant term.
pub fn random_series(rng: &mut ChaCha8Rng, degree: usize, c0: f64) -> ComplexSeries {
    let mut coeffs = Vec::with_capacity(degree + 1);
    coeffs.push(gaussian(rng) * c0);
    for k in 1..=degree {
        coeffs.push(gaussian(rng) / (k * k) as f64);
    }
    ComplexSeries::new(coeffs)
}

/// A planar map with `h(0) = 0`.
pub fn random_planar_map(seed: u64, degree: usize) -> PlanarHarmonicMap {
    let mut rng = rng(seed);
    let g = random_series(&mut rng, degree, 1.0);
    let h = random_series(&mut rng, degree, 0.0);
    PlanarHarmonicMap::new(g, h)
}

/// A map into `R^dim`. When the drawn coin says so, the linear part is
/// replaced by `c (a + i b) z` with `a ⟂ b`, `|a| = |b| = 1`, which makes the
/// map conformal at the origin.
pub fn random_vector_map(seed: u64, degree: usize, dim: usize) -> VectorHarmonicMap {
    let mut rng = rng(seed);
    let mut components: Vec<ComplexSeries> =
        (0..dim).map(|_| random_series(&mut rng, degree, 1.0)).collect();
    let conformal: bool = rng.random_bool(0.5);
    if conformal && dim >= 2 && degree >= 1 {
        let (a, b) = orthonormal_pair(&mut rng, dim);
        let c = 0.5 + rng.random::<f64>();
        for (k, comp) in components.iter_mut().enumerate() {
            let mut coeffs = comp.coeffs().to_vec();
            coeffs[1] = C64::new(a[k], b[k]) * c;
            *comp = ComplexSeries::new(coeffs);
        }
    }
    VectorHarmonicMap::new(components).expect("dimension is positive")
}

fn orthonormal_pair(rng: &mut ChaCha8Rng, dim: usize) -> (Vec<f64>, Vec<f64>) {
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    loop {
        let a: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let b: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let na = dot(&a, &a).sqrt();
        if na < 1e-3 {
            continue;
        }
        let a: Vec<f64> = a.iter().map(|x| x / na).collect();
        let proj = dot(&a, &b);
        let b: Vec<f64> = b.iter().zip(&a).map(|(y, x)| y - proj * x).collect();
        let nb = dot(&b, &b).sqrt();
        if nb < 1e-3 {
            continue;
        }
        return (a, b.iter().map(|y| y / nb).collect());
    }
}

/// An analytic `F` with `Re F` in `(-1, 1)`: `F = (4/π) arctan ∘ B` where
/// `B(z) = w0 + (1 - |w0|) ρ z q(z) / ‖q‖₁` is a polynomial self-map of the
/// disk with `|B| <= |w0| + (1 - |w0|) ρ < 1`. The series stops at its last
/// coefficient above [`INTERVAL_TAIL`].
pub fn random_interval_map(seed: u64, degree: usize) -> ComplexSeries {
    let f = compose_strip_map(&interval_inner(seed, degree), INTERVAL_DEGREE);
    let keep = f.coeffs().iter().rposition(|c| c.norm() > INTERVAL_TAIL).unwrap_or(0);
    f.truncated(keep)
}

fn interval_inner(seed: u64, degree: usize) -> ComplexSeries {
    let mut rng = rng(seed);
    let m = degree.clamp(1, INTERVAL_INNER_DEGREE);
    let w0 = C64::from_polar(0.8 * rng.random::<f64>().sqrt(), 2.0 * PI * rng.random::<f64>());
    let rho = 0.3 + 0.5 * rng.random::<f64>();
    let q = random_series(&mut rng, m - 1, 1.0);
    let l1: f64 = q.coeffs().iter().map(|c| c.norm()).sum();
    let inner = q.shift_up(1).scale(C64::new((1.0 - w0.norm()) * rho / l1, 0.0));
    ComplexSeries::constant(w0).add(&inner)
}

/// `(4/π) arctan(B)` truncated to degree `n`, via `arctan(B)' = B' / (1 + B²)`.
pub fn compose_strip_map(b: &ComplexSeries, n: usize) -> ComplexSeries {
    let one_plus_b2 = ComplexSeries::constant(C64::new(1.0, 0.0)).add(&b.mul_truncated(b, n));
    let recip = one_plus_b2
        .reciprocal(n)
        .expect("1 + B^2 does not vanish for a self-map B");
    let integrand = b.derivative().mul_truncated(&recip, n - 1);
    integrand
        .antiderivative(b.coeff(0).atan())
        .truncated(n)
        .scale(C64::new(4.0 / PI, 0.0))
}

/// A random planar map divided by its sampled boundary sup plus
/// [`DISK_MARGIN`].
pub fn random_disk_map(seed: u64, degree: usize) -> PlanarHarmonicMap {
    let f = random_planar_map(seed, degree);
    let g = f.g.sample_circle(1.0, DISK_SUP_SAMPLES);
    let h = f.h.sample_circle(1.0, DISK_SUP_SAMPLES);
    let sup = g
        .iter()
        .zip(&h)
        .map(|(a, b)| (a + b.conj()).norm())
        .fold(0.0f64, f64::max);
    f.scale(1.0 / (sup + DISK_MARGIN))
}

/// The random map of a fuzz case.
pub fn random_map(seed: u64, degree: usize, target: Target) -> HarmonicMap {
    match target {
        Target::Planar => HarmonicMap::Planar(random_planar_map(seed, degree)),
        Target::Vector3 => HarmonicMap::Vector(random_vector_map(seed, degree, 3)),
        Target::Interval => HarmonicMap::Vector(VectorHarmonicMap::scalar(random_interval_map(seed, degree))),
        Target::Disk => HarmonicMap::Planar(random_disk_map(seed, degree)),
    }
}

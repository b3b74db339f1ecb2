//! Length, area, diameter, Dirichlet energy and quasiconformality of
//! harmonic maps, and the inequalities relating them.
//!
//! All functionals are evaluated for the dilation `u_r(z) = u(r z)`: the
//! length and diameter are those of the image of `|z| = r`, and area and
//! energy are integrals over `|z| < r`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fft::next_power_of_two;
use crate::quadrature::radial_rule;
use crate::report::Check;
use crate::series::{ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap};
use crate::tangent::{conformal_at, CONFORMAL_TOLERANCE};
use crate::{C64, SLACK_TOLERANCE};

/// Jacobians at or below this are treated as degenerate.
pub const DEGENERATE_JACOBIAN: f64 = 1e-12;

/// Largest radius accepted by the area and energy quadratures.
pub const MAX_AREA_RADIUS: f64 = 1.0 - 1e-6;

/// First fundamental form of the image surface at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalForms {
    /// `|D_1 u|^2`.
    pub e: f64,
    /// `|D_2 u|^2`.
    pub g: f64,
    /// `D_1 u · D_2 u`.
    pub fmix: f64,
    /// `sqrt(max(E G - Fmix^2, 0))`.
    pub j: f64,
}

impl FundamentalForms {
    fn from_derivatives(derivs: impl IntoIterator<Item = C64>) -> Self {
        let (mut e, mut g, mut fmix) = (0.0, 0.0, 0.0);
        for d in derivs {
            let (d1, d2) = (d.re, -d.im);
            e += d1 * d1;
            g += d2 * d2;
            fmix += d1 * d2;
        }
        FundamentalForms { e, g, fmix, j: (e * g - fmix * fmix).max(0.0).sqrt() }
    }

    /// `K*(u, z) = (E + G) / (2 J)`; `None` at degenerate points.
    pub fn kstar(&self) -> Option<f64> {
        (self.j > DEGENERATE_JACOBIAN).then(|| (self.e + self.g) / (2.0 * self.j))
    }

    /// Largest and smallest singular values of the differential `[D_1 u D_2 u]`.
    pub fn stretches(&self) -> (f64, f64) {
        let half_trace = (self.e + self.g) / 2.0;
        let half_gap = (self.e - self.g) / 2.0;
        let big = (half_trace + half_gap.hypot(self.fmix)).sqrt();
        let small = if big > 0.0 { self.j / big } else { 0.0 };
        (big, small)
    }
}

pub fn fundamental_forms(u: &VectorHarmonicMap, z: C64) -> FundamentalForms {
    FundamentalForms::from_derivatives(u.derivative_at(z))
}

/// `(Λ_u(z), λ_u(z))`, the operator norm of the differential and its
/// smallest singular value.
pub fn stretches(u: &VectorHarmonicMap, z: C64) -> (f64, f64) {
    fundamental_forms(u, z).stretches()
}

fn check_open_radius(r: f64) -> Result<f64> {
    if r > 0.0 && r < 1.0 {
        Ok(r)
    } else {
        Err(Error::RadiusOutOfRange { radius: r })
    }
}

/// `i z F'(z)`, whose real part is the angular derivative of `Re F`.
fn angular_series(f: &ComplexSeries) -> ComplexSeries {
    ComplexSeries::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| C64::new(0.0, k as f64) * c)
            .collect(),
    )
}

/// Real parts of every component on `n` points of `|z| = r`, point-major.
fn circle_points(series: &[ComplexSeries], r: f64, n: usize) -> Vec<f64> {
    let m = series.len();
    let mut out = vec![0.0; n * m];
    for (k, f) in series.iter().enumerate() {
        for (j, v) in f.sample_circle(r, n).into_iter().enumerate() {
            out[j * m + k] = v.re;
        }
    }
    out
}

/// Length of the image of `|z| = r` by the trapezoid rule on `n` points.
pub fn length(u: &VectorHarmonicMap, r: f64, n: usize) -> Result<f64> {
    check_open_radius(r)?;
    if n < 64 {
        return Err(Error::InvalidSampleCount(n));
    }
    let tangents: Vec<ComplexSeries> = u.components().iter().map(angular_series).collect();
    let points = circle_points(&tangents, r, n);
    let m = u.dimension();
    let sum: f64 = points
        .chunks(m)
        .map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt())
        .sum();
    Ok(2.0 * PI * sum / n as f64)
}

/// Largest pairwise distance among `n` image points of `|z| = r`.
pub fn diameter(u: &VectorHarmonicMap, r: f64, n: usize) -> Result<f64> {
    check_open_radius(r)?;
    if n < 2 {
        return Err(Error::InvalidSampleCount(n));
    }
    let m = u.dimension();
    let points = circle_points(u.components(), r, n);
    if m == 1 {
        let (lo, hi) = points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        return Ok(hi - lo);
    }
    let mut best = 0.0f64;
    for i in 0..n {
        let p = &points[i * m..(i + 1) * m];
        for j in (i + 1)..n {
            let q = &points[j * m..(j + 1) * m];
            let d2: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
            best = best.max(d2);
        }
    }
    Ok(best.sqrt())
}

/// Tensor quadrature over the disk `|z| < r`: composite Gauss–Legendre in
/// the radius and the trapezoid rule in the angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarRule {
    pub panels: usize,
    pub nodes: usize,
    pub angles: usize,
    /// Degree of the series the rule must resolve; sets the grading of the
    /// radial panels near the circle. Zero gives equal panels.
    pub degree: usize,
}

impl Default for PolarRule {
    fn default() -> Self {
        PolarRule { panels: 8, nodes: 64, angles: 512, degree: 0 }
    }
}

impl PolarRule {
    /// Default radial rule with enough angles to integrate `|F'|^2` exactly
    /// for series of the given degree.
    pub fn for_degree(degree: usize) -> Self {
        PolarRule {
            angles: 256usize.max(next_power_of_two(2 * degree + 2)),
            degree,
            ..Self::default()
        }
    }

    /// Radial nodes and weights on `[0, r]`.
    pub fn radial(&self, r: f64) -> Vec<(f64, f64)> {
        let max_width = if self.degree == 0 {
            f64::INFINITY
        } else {
            self.nodes as f64 / (2 * self.degree + 2) as f64
        };
        radial_rule(r, self.panels, self.nodes, max_width)
    }
}

/// Area, energy and qc data from one pass over the quadrature nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskIntegrals {
    /// `∫ J_u`.
    pub area: f64,
    /// `∫ (E + G)`.
    pub dirichlet: f64,
    /// Largest `K*` over non-degenerate nodes (`0` if there are none).
    pub kstar: f64,
    /// Largest `(E + Fmix) / (2 J)` over non-degenerate nodes.
    pub kstar_e_plus_fmix: f64,
    pub degenerate: usize,
    pub total: usize,
}

/// Supremum of `K*` over a point set, with the count of skipped
/// degenerate points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QcEstimate {
    pub kstar: f64,
    pub degenerate: usize,
    pub total: usize,
}

impl QcEstimate {
    fn from_counts(kstar: f64, degenerate: usize, total: usize) -> Result<Self> {
        // more than 1% degenerate points, or no usable point at all
        if degenerate * 100 > total || degenerate == total {
            Err(Error::DegenerateJacobian { degenerate, total })
        } else {
            Ok(QcEstimate { kstar, degenerate, total })
        }
    }

    /// True when some points were skipped.
    pub fn flagged(&self) -> bool {
        self.degenerate > 0
    }
}

impl DiskIntegrals {
    pub fn qc(&self) -> Result<QcEstimate> {
        QcEstimate::from_counts(self.kstar, self.degenerate, self.total)
    }
}

pub fn disk_integrals(u: &VectorHarmonicMap, r: f64, rule: &PolarRule) -> Result<DiskIntegrals> {
    if !(r > 0.0 && r <= MAX_AREA_RADIUS) {
        return Err(Error::RadiusOutOfRange { radius: r });
    }
    if rule.angles < 1 || rule.nodes < 1 || rule.panels < 1 {
        return Err(Error::InvalidSampleCount(rule.angles.min(rule.nodes).min(rule.panels)));
    }
    let derivs: Vec<ComplexSeries> = u.components().iter().map(ComplexSeries::derivative).collect();
    let m = derivs.len();
    let nt = rule.angles;
    let dtheta = 2.0 * PI / nt as f64;
    let mut out = DiskIntegrals {
        area: 0.0,
        dirichlet: 0.0,
        kstar: 0.0,
        kstar_e_plus_fmix: f64::NEG_INFINITY,
        degenerate: 0,
        total: 0,
    };
    let mut samples = vec![C64::new(0.0, 0.0); nt * m];
    for (rho, w) in rule.radial(r) {
        for (k, d) in derivs.iter().enumerate() {
            for (j, v) in d.sample_circle(rho, nt).into_iter().enumerate() {
                samples[j * m + k] = v;
            }
        }
        let weight = w * rho * dtheta;
        for point in samples.chunks(m) {
            let forms = FundamentalForms::from_derivatives(point.iter().copied());
            out.area += weight * forms.j;
            out.dirichlet += weight * (forms.e + forms.g);
            out.total += 1;
            match forms.kstar() {
                Some(k) => {
                    out.kstar = out.kstar.max(k);
                    let lit = (forms.e + forms.fmix) / (2.0 * forms.j);
                    out.kstar_e_plus_fmix = out.kstar_e_plus_fmix.max(lit);
                }
                None => out.degenerate += 1,
            }
        }
    }
    Ok(out)
}

/// Area of the image surface over `|z| < r`, counted with multiplicity.
pub fn area(u: &VectorHarmonicMap, r: f64, rule: &PolarRule) -> Result<f64> {
    Ok(disk_integrals(u, r, rule)?.area)
}

/// Dirichlet energy `∫ (|D_1 u|^2 + |D_2 u|^2)` over `|z| < r` by quadrature.
pub fn dirichlet_quadrature(u: &VectorHarmonicMap, r: f64, rule: &PolarRule) -> Result<f64> {
    Ok(disk_integrals(u, r, rule)?.dirichlet)
}

/// `π Σ_k k |F̂(k)|^2` over the whole disk.
pub fn dirichlet_parseval(u: &VectorHarmonicMap) -> f64 {
    dirichlet_parseval_within(u, 1.0)
}

/// `π Σ_k k |F̂(k)|^2 r^{2k}`, the energy over `|z| < r`.
pub fn dirichlet_parseval_within(u: &VectorHarmonicMap, r: f64) -> f64 {
    let r2 = r * r;
    let mut total = 0.0;
    for f in u.components() {
        let mut rk = 1.0;
        for (k, c) in f.coeffs().iter().enumerate().skip(1) {
            rk *= r2;
            total += k as f64 * c.norm_sqr() * rk;
        }
    }
    PI * total
}

/// Supremum of `K*(u, z)` over `grid`, skipping degenerate points.
pub fn qc_coefficient(u: &VectorHarmonicMap, grid: &[C64]) -> Result<QcEstimate> {
    let mut kstar = 0.0f64;
    let mut degenerate = 0;
    for &z in grid {
        match fundamental_forms(u, z).kstar() {
            Some(k) => kstar = kstar.max(k),
            None => degenerate += 1,
        }
    }
    QcEstimate::from_counts(kstar, degenerate, grid.len())
}

/// Sample counts used by the checks in this module.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resolution {
    /// Trapezoid points for lengths.
    pub boundary: usize,
    /// Circle points for diameters.
    pub diameter: usize,
    pub rule: PolarRule,
}

impl Default for Resolution {
    fn default() -> Self {
        Resolution { boundary: 4096, diameter: 2048, rule: PolarRule::default() }
    }
}

impl Resolution {
    /// Raises the sample counts to resolve a series of the given degree:
    /// at least `8 (degree + 1)` boundary points, `4 (degree + 1)` diameter
    /// points and the angles of [`PolarRule::for_degree`], each rounded up
    /// to a power of two.
    pub fn for_degree(self, degree: usize) -> Self {
        Resolution {
            boundary: self.boundary.max(next_power_of_two(8 * (degree + 1))),
            diameter: self.diameter.max(next_power_of_two(4 * (degree + 1))),
            rule: PolarRule {
                angles: self.rule.angles.max(PolarRule::for_degree(degree).angles),
                degree: self.rule.degree.max(degree),
                ..self.rule
            },
        }
    }
}

pub(crate) fn isoperimetric_from(l: f64, a: f64) -> Check {
    Check::new("isoperimetric", 4.0 * PI * a, l * l, SLACK_TOLERANCE * l * l)
}

/// `4π A(r) <= L(r)^2`.
pub fn isoperimetric_check(u: &VectorHarmonicMap, r: f64, res: &Resolution) -> Result<Check> {
    let l = length(u, r, res.boundary)?;
    let a = area(u, r, &res.rule)?;
    Ok(isoperimetric_from(l, a))
}

pub(crate) fn energy_area_from(integrals: &DiskIntegrals, kbar: f64) -> Check {
    let d = integrals.dirichlet;
    Check::new("energy_area", d, 2.0 * kbar * integrals.area, SLACK_TOLERANCE * d)
}

/// `D[u] <= 2 K̲ A` over `|z| < r` for a map that is `K̲`-qc on the
/// quadrature nodes, i.e. `E + G <= 2 K̲ J` there.
pub fn energy_area_check(u: &VectorHarmonicMap, kbar: f64, r: f64, rule: &PolarRule) -> Result<Check> {
    let integrals = disk_integrals(u, r, rule)?;
    let qc = integrals.qc()?;
    if kbar < qc.kstar * (1.0 - 1e-12) {
        return Err(Error::SpecViolation("K̲ is below the qc coefficient of the map"));
    }
    Ok(energy_area_from(&integrals, kbar))
}

/// `2π k |ĝ_k| <= L` for every coefficient of `g`.
pub fn coefficient_length_check(f: &PlanarHarmonicMap, r: f64, n: usize) -> Result<Check> {
    let l = length(&f.to_vector(), r, n)?;
    Ok(coefficient_length_from(f, r, l))
}

pub(crate) fn coefficient_length_from(f: &PlanarHarmonicMap, r: f64, l: f64) -> Check {
    let mut rk = 1.0;
    let pairs: Vec<(f64, f64)> = f
        .g
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| {
            rk *= r;
            (2.0 * PI * k as f64 * c.norm() * rk, l)
        })
        .collect();
    Check::worst("coefficient_length", pairs, SLACK_TOLERANCE)
}

/// Interior length bounds for `f_r`:
/// `2π(1-|z|^2)|g'(z)| <= L`, `2π(1-|z|^2) λ_f(z) <= L` over `zgrid`, and
/// `π(Λ_f(0) + λ_f(0)) <= L`, `2π max(|g'(0)|, |h'(0)|) <= L`.
pub fn interior_length_check(
    f: &PlanarHarmonicMap,
    zgrid: &[C64],
    r: f64,
    n: usize,
) -> Result<Vec<Check>> {
    let l = length(&f.to_vector(), r, n)?;
    interior_length_from(f, zgrid, r, l)
}

pub(crate) fn interior_length_from(
    f: &PlanarHarmonicMap,
    zgrid: &[C64],
    r: f64,
    l: f64,
) -> Result<Vec<Check>> {
    let fr = f.dilate(r);
    let mut g_pairs = Vec::with_capacity(zgrid.len());
    let mut lambda_pairs = Vec::with_capacity(zgrid.len());
    for &z in zgrid {
        let m = z.norm();
        if m >= 1.0 {
            return Err(Error::OutsideDisk { modulus: m });
        }
        let d = fr.dilatations(z);
        let factor = 2.0 * PI * (1.0 - m * m);
        g_pairs.push((factor * d.p.norm(), l));
        lambda_pairs.push((factor * d.lambda_min, l));
    }
    let d0 = fr.dilatations(C64::new(0.0, 0.0));
    Ok(vec![
        Check::worst("interior_analytic_derivative", g_pairs, SLACK_TOLERANCE),
        Check::worst("interior_min_stretch", lambda_pairs, SLACK_TOLERANCE),
        Check::new("origin_stretch_sum", PI * (d0.lambda_max + d0.lambda_min), l, SLACK_TOLERANCE),
        Check::new(
            "origin_max_derivative",
            2.0 * PI * d0.p.norm().max(d0.q.norm()),
            l,
            SLACK_TOLERANCE,
        ),
    ])
}

pub(crate) fn diameter_distortion_from(u: &VectorHarmonicMap, r: f64, d: f64, l: f64) -> Vec<Check> {
    let (big, _) = stretches(u, C64::new(0.0, 0.0));
    vec![
        Check::new("diameter_stretch", PI * big * r, 2.0 * d, SLACK_TOLERANCE),
        Check::new("diameter_length", 2.0 * d, l, SLACK_TOLERANCE),
    ]
}

/// `π Λ(0) <= 2d <= L` for `u_r`.
pub fn diameter_distortion_check(u: &VectorHarmonicMap, r: f64, res: &Resolution) -> Result<Vec<Check>> {
    let d = diameter(u, r, res.diameter)?;
    let l = length(u, r, res.boundary)?;
    Ok(diameter_distortion_from(u, r, d, l))
}

pub(crate) fn vector_origin_from(u: &VectorHarmonicMap, r: f64, l: f64) -> Vec<Check> {
    let zero = C64::new(0.0, 0.0);
    let fprime = u.derivative_at(zero).iter().map(C64::norm_sqr).sum::<f64>().sqrt() * r;
    let mut checks = vec![
        Check::new("origin_completion_derivative", PI * fprime, l, SLACK_TOLERANCE),
        Check::new("origin_wirtinger", 2.0 * PI * fprime / 2.0, l, SLACK_TOLERANCE),
    ];
    if conformal_at(u, zero, CONFORMAL_TOLERANCE) {
        let (big, _) = stretches(u, zero);
        checks.push(Check::new("origin_conformal_stretch", 2.0 * PI * big * r, l, SLACK_TOLERANCE));
    }
    checks
}

/// `π|F'(0)| <= L`, `2π|D_z u(0)| <= L` and, when `u` is conformal at the
/// origin, `2π Λ_u(0) <= L`.
pub fn vector_origin_check(u: &VectorHarmonicMap, r: f64, n: usize) -> Result<Vec<Check>> {
    let l = length(u, r, n)?;
    Ok(vector_origin_from(u, r, l))
}

/// `L⁺ = max` of the lengths over `rgrid`.
pub fn generalized_length(u: &VectorHarmonicMap, rgrid: &[f64], n: usize) -> Result<f64> {
    let mut best = 0.0f64;
    for &r in rgrid {
        best = best.max(length(u, r, n)?);
    }
    Ok(best)
}

/// `L(r)` and `d(r)` nondecreasing along `rgrid`.
pub fn monotonicity_check(u: &VectorHarmonicMap, rgrid: &[f64], res: &Resolution) -> Result<Vec<Check>> {
    let mut lengths = Vec::with_capacity(rgrid.len());
    let mut diameters = Vec::with_capacity(rgrid.len());
    for &r in rgrid {
        lengths.push(length(u, r, res.boundary)?);
        diameters.push(diameter(u, r, res.diameter)?);
    }
    let steps = |v: &[f64]| -> Vec<(f64, f64)> { v.windows(2).map(|w| (w[0], w[1])).collect() };
    Ok(vec![
        Check::worst("length_monotone", steps(&lengths), SLACK_TOLERANCE),
        Check::worst("diameter_monotone", steps(&diameters), SLACK_TOLERANCE),
    ])
}

/// Points used for circle means in [`subharmonicity_check`].
pub const SUBMEAN_POINTS: usize = 256;

/// Sub-mean-value property of `|u|` and of the angular derivative `|u'_t|`
/// on circles of radius `rho` around each grid point.
pub fn subharmonicity_check(u: &VectorHarmonicMap, zgrid: &[C64], rho: f64) -> Result<Vec<Check>> {
    // |u(w)| and |d/dt u(w)| from one Horner pass per component.
    let norms = |w: C64| -> (f64, f64) {
        let iw = C64::new(0.0, 1.0) * w;
        let (mut v2, mut t2) = (0.0, 0.0);
        for f in u.components() {
            let (v, d) = f.eval_with_derivative(w);
            let t = (iw * d).re;
            v2 += v.re * v.re;
            t2 += t * t;
        }
        (v2.sqrt(), t2.sqrt())
    };
    let mut value_pairs = Vec::with_capacity(zgrid.len());
    let mut tangent_pairs = Vec::with_capacity(zgrid.len());
    for &z in zgrid {
        if !(rho > 0.0 && z.norm() + rho < 1.0) {
            return Err(Error::RadiusOutOfRange { radius: z.norm() + rho });
        }
        let (mut mean_v, mut mean_t) = (0.0, 0.0);
        for j in 0..SUBMEAN_POINTS {
            let (v, t) = norms(z + C64::from_polar(rho, 2.0 * PI * j as f64 / SUBMEAN_POINTS as f64));
            mean_v += v;
            mean_t += t;
        }
        let (v0, t0) = norms(z);
        value_pairs.push((v0, mean_v / SUBMEAN_POINTS as f64));
        tangent_pairs.push((t0, mean_t / SUBMEAN_POINTS as f64));
    }
    Ok(vec![
        Check::worst("submean_modulus", value_pairs, SLACK_TOLERANCE),
        Check::worst("submean_angular_derivative", tangent_pairs, SLACK_TOLERANCE),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn vmap(components: Vec<Vec<C64>>) -> VectorHarmonicMap {
        VectorHarmonicMap::new(components.into_iter().map(ComplexSeries::new).collect()).unwrap()
    }

    fn identity() -> VectorHarmonicMap {
        VectorHarmonicMap::identity()
    }

    fn square() -> VectorHarmonicMap {
        PlanarHarmonicMap::analytic(ComplexSeries::monomial(c(1.0, 0.0), 2)).to_vector()
    }

    fn constant() -> VectorHarmonicMap {
        vmap(vec![vec![c(0.3, 0.1)], vec![c(-2.0, 0.0)]])
    }

    /// `u = (2x, y)`: `F = (2z, -i z)`.
    fn stretch_x() -> VectorHarmonicMap {
        vmap(vec![vec![c(0.0, 0.0), c(2.0, 0.0)], vec![c(0.0, 0.0), c(0.0, -1.0)]])
    }

    /// `u = (x, -y)`: `F = (z, i z)`.
    fn reflection() -> VectorHarmonicMap {
        vmap(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]])
    }

    fn lcg_map(seed: u64, m: usize, degree: usize) -> VectorHarmonicMap {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let components = (0..m)
            .map(|_| {
                (0..=degree)
                    .map(|k| {
                        let s = 1.0 / ((k.max(1) * k.max(1)) as f64);
                        c(next() * s, next() * s)
                    })
                    .collect()
            })
            .collect();
        vmap(components)
    }

    #[test]
    fn length_examples() {
        assert_abs_diff_eq!(length(&identity(), 0.9999, 1024).unwrap(), 2.0 * PI, epsilon = 1e-3);
        assert_abs_diff_eq!(length(&identity(), 0.5, 1024).unwrap(), PI, epsilon = 1e-12);
        let r = 0.9999;
        assert_abs_diff_eq!(length(&square(), r, 1024).unwrap(), 4.0 * PI * r * r, epsilon = 1e-12);
        assert_abs_diff_eq!(length(&square(), 1.0 - 1e-5, 1024).unwrap(), 4.0 * PI, epsilon = 1e-3);
        assert_eq!(length(&constant(), 0.7, 64).unwrap(), 0.0);
        assert!(matches!(length(&identity(), 1.0, 64), Err(Error::RadiusOutOfRange { .. })));
        assert!(length(&identity(), 0.5, 16).is_err());
    }

    #[test]
    fn area_examples() {
        let rule = PolarRule::default();
        assert_abs_diff_eq!(area(&identity(), MAX_AREA_RADIUS, &rule).unwrap(), PI, epsilon = 1e-4);
        assert_abs_diff_eq!(area(&square(), MAX_AREA_RADIUS, &rule).unwrap(), 2.0 * PI, epsilon = 1e-4);
        assert_abs_diff_eq!(area(&square(), 0.5, &rule).unwrap(), 2.0 * PI * 0.0625, epsilon = 1e-12);
        assert_eq!(area(&constant(), 0.5, &rule).unwrap(), 0.0);
        assert!(area(&identity(), 1.0, &rule).is_err());
    }

    #[test]
    fn diameter_examples() {
        assert_abs_diff_eq!(diameter(&identity(), 0.5, 1024).unwrap(), 1.0, epsilon = 1e-5);
        assert_eq!(diameter(&constant(), 0.5, 64).unwrap(), 0.0);
        assert_abs_diff_eq!(diameter(&square(), 0.5, 1024).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn scalar_diameter_is_the_range() {
        let f = lcg_map(5, 1, 12);
        let spread = diameter(&f, 0.9, 512).unwrap();
        let padded = VectorHarmonicMap::new(vec![f.components()[0].clone(), ComplexSeries::zero()]).unwrap();
        assert_abs_diff_eq!(spread, diameter(&padded, 0.9, 512).unwrap(), epsilon = 1e-14);
    }

    #[test]
    fn resolution_follows_degree() {
        let res = Resolution::default().for_degree(4096);
        assert_eq!(res.boundary, 65536);
        assert_eq!(res.diameter, 32768);
        assert_eq!(res.rule.angles, 16384);
        assert_eq!(res.rule.degree, 4096);
        assert_eq!(Resolution::default().for_degree(16).rule.angles, 512);
    }

    #[test]
    fn dirichlet_examples() {
        let rule = PolarRule::default();
        let full = MAX_AREA_RADIUS;
        assert_abs_diff_eq!(dirichlet_quadrature(&identity(), full, &rule).unwrap(), 2.0 * PI, epsilon = 1e-4);
        let scalar_square = VectorHarmonicMap::scalar(ComplexSeries::monomial(c(1.0, 0.0), 2));
        assert_abs_diff_eq!(dirichlet_quadrature(&scalar_square, full, &rule).unwrap(), 2.0 * PI, epsilon = 1e-4);
        assert_eq!(dirichlet_quadrature(&constant(), 0.9, &rule).unwrap(), 0.0);
        assert_abs_diff_eq!(dirichlet_parseval(&identity()), 2.0 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(dirichlet_parseval(&scalar_square), 2.0 * PI, epsilon = 1e-14);
        assert_eq!(dirichlet_parseval(&constant()), 0.0);
    }

    #[test]
    fn parseval_agrees_with_quadrature() {
        for seed in 0..10 {
            let u = lcg_map(seed, 1 + (seed as usize % 3), 24);
            let r = 0.95;
            let q = dirichlet_quadrature(&u, r, &PolarRule::for_degree(24)).unwrap();
            let p = dirichlet_parseval_within(&u, r);
            assert!(((q - p) / p).abs() < 1e-10, "seed {seed}: {q} vs {p}");
        }
    }

    #[test]
    fn forms_examples() {
        let z = c(0.3, -0.2);
        let f = fundamental_forms(&identity(), z);
        assert_abs_diff_eq!(f.e, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f.g, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f.fmix, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f.j, 1.0, epsilon = 1e-15);

        let three = vmap(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0)],
        ]);
        let f = fundamental_forms(&three, z);
        assert_eq!((f.e, f.g, f.fmix, f.j), (1.0, 1.0, 0.0, 1.0));

        let f = fundamental_forms(&stretch_x(), z);
        assert_eq!((f.e, f.g, f.fmix, f.j), (4.0, 1.0, 0.0, 2.0));
    }

    #[test]
    fn qc_examples() {
        let grid: Vec<C64> = (0..20).map(|j| C64::from_polar(0.05 * j as f64, j as f64)).collect();
        assert_abs_diff_eq!(qc_coefficient(&identity(), &grid).unwrap().kstar, 1.0, epsilon = 1e-15);
        let k = qc_coefficient(&stretch_x(), &grid).unwrap().kstar;
        assert_abs_diff_eq!(k, 1.25, epsilon = 1e-15);
        let planar_k: f64 = 2.0;
        assert_abs_diff_eq!(k, (planar_k * planar_k + 1.0) / (2.0 * planar_k), epsilon = 1e-15);
        assert_abs_diff_eq!(qc_coefficient(&reflection(), &grid).unwrap().kstar, 1.0, epsilon = 1e-15);
        assert!(matches!(
            qc_coefficient(&constant(), &grid),
            Err(Error::DegenerateJacobian { .. })
        ));
    }

    #[test]
    fn stretches_match_planar_dilatations() {
        let f = PlanarHarmonicMap::new(
            ComplexSeries::new(vec![c(0.0, 0.0), c(1.0, 0.5), c(0.2, -0.1)]),
            ComplexSeries::new(vec![c(0.0, 0.0), c(0.3, 0.2), c(0.0, 0.4)]),
        );
        for z in [c(0.0, 0.0), c(0.4, -0.3), c(-0.7, 0.1)] {
            let d = f.dilatations(z);
            let (big, small) = stretches(&f.to_vector(), z);
            assert_abs_diff_eq!(big, d.lambda_max, epsilon = 1e-12);
            assert_abs_diff_eq!(small, d.lambda_min, epsilon = 1e-12);
        }
    }

    #[test]
    fn isoperimetric_examples() {
        let res = Resolution::default();
        let r = 1.0 - 1e-4;
        let check = isoperimetric_check(&identity(), r, &res).unwrap();
        assert!(check.slack.abs() < 1e-6 && check.pass, "{check:?}");
        let check = isoperimetric_check(&square(), r, &res).unwrap();
        assert_abs_diff_eq!(check.slack, 8.0 * PI * PI * r.powi(4), epsilon = 1e-8);
    }

    #[test]
    fn energy_area_examples() {
        let rule = PolarRule::default();
        let r = MAX_AREA_RADIUS;
        let check = energy_area_check(&identity(), 1.0, r, &rule).unwrap();
        assert!(check.pass && check.slack.abs() < 1e-9, "{check:?}");
        let check = energy_area_check(&stretch_x(), 1.25, r, &rule).unwrap();
        assert_abs_diff_eq!(check.lhs, 5.0 * PI, epsilon = 1e-4);
        assert!(check.pass && check.slack.abs() < 1e-9, "{check:?}");
        assert!(matches!(
            energy_area_check(&stretch_x(), 1.0, r, &rule),
            Err(Error::SpecViolation(_))
        ));
        let fold = PlanarHarmonicMap::new(ComplexSeries::identity(), ComplexSeries::identity());
        assert!(matches!(
            energy_area_check(&fold.to_vector(), 10.0, r, &rule),
            Err(Error::DegenerateJacobian { .. })
        ));
    }

    #[test]
    fn coefficient_length_examples() {
        let r = 1.0 - 1e-4;
        let check = coefficient_length_check(&PlanarHarmonicMap::identity(), r, 1024).unwrap();
        assert!(check.pass && check.slack.abs() < 1e-12);
        let sq = PlanarHarmonicMap::analytic(ComplexSeries::monomial(c(1.0, 0.0), 2));
        let check = coefficient_length_check(&sq, r, 1024).unwrap();
        assert!(check.pass && check.slack.abs() < 1e-12);
        assert_abs_diff_eq!(check.rhs, 4.0 * PI * r * r, epsilon = 1e-12);
    }

    #[test]
    fn interior_length_identity() {
        let grid = [c(0.0, 0.0), c(0.5, 0.0), c(0.0, -0.8)];
        let checks = interior_length_check(&PlanarHarmonicMap::identity(), &grid, 0.999, 1024).unwrap();
        assert!(checks.iter().all(|c| c.pass));
        assert!(checks[0].slack.abs() < 1e-12);
        assert!(checks[2].slack.abs() < 1e-12);
    }

    #[test]
    fn diameter_distortion_examples() {
        let res = Resolution { boundary: 1024, diameter: 1024, ..Resolution::default() };
        let checks = diameter_distortion_check(&identity(), 0.9999, &res).unwrap();
        assert_abs_diff_eq!(checks[0].lhs, PI, epsilon = 1e-3);
        assert_abs_diff_eq!(checks[0].rhs, 4.0, epsilon = 1e-3);
        assert_abs_diff_eq!(checks[1].rhs, 2.0 * PI, epsilon = 1e-3);
        assert!(checks.iter().all(|c| c.pass));

        let d = 3.0;
        let p = VectorHarmonicMap::scalar(ComplexSeries::monomial(c(d / 2.0, 0.0), 1));
        let checks = diameter_distortion_check(&p, 0.9999, &res).unwrap();
        assert!(checks[0].slack > 0.4 * d);
        assert_abs_diff_eq!(checks[0].slack, d * (2.0 - PI / 2.0), epsilon = 1e-3);
    }

    #[test]
    fn vector_origin_examples() {
        let r = 1.0 - 1e-4;
        let checks = vector_origin_check(&identity(), r, 1024).unwrap();
        assert_eq!(checks.len(), 3);
        assert_abs_diff_eq!(checks[0].lhs, PI * 2f64.sqrt() * r, epsilon = 1e-12);
        assert!(checks.iter().all(|c| c.pass));
        assert!(checks[2].slack.abs() < 1e-12);

        let flat = vmap(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0)],
        ]);
        let checks = vector_origin_check(&flat, r, 1024).unwrap();
        assert_eq!(checks.len(), 3);
        assert!(checks[2].slack.abs() < 1e-12);
        assert_eq!(vector_origin_check(&stretch_x(), r, 1024).unwrap().len(), 2);
    }

    #[test]
    fn generalized_length_examples() {
        let grid = [0.5, 0.9, 0.99, 0.9999];
        let l = generalized_length(&identity(), &grid, 1024).unwrap();
        assert_abs_diff_eq!(l, 2.0 * PI, epsilon = 1e-3);
        let u = lcg_map(3, 2, 12);
        assert_eq!(
            generalized_length(&u, &grid, 1024).unwrap(),
            length(&u, 0.9999, 1024).unwrap()
        );
    }

    #[test]
    fn monotonicity_examples() {
        let rgrid: Vec<f64> = (1..10).map(|j| j as f64 / 10.0).collect();
        let res = Resolution { boundary: 512, diameter: 256, ..Resolution::default() };
        let checks = monotonicity_check(&identity(), &rgrid, &res).unwrap();
        assert!(checks.iter().all(|c| c.pass && c.slack > 0.0));
        let checks = monotonicity_check(&constant(), &rgrid, &res).unwrap();
        assert!(checks.iter().all(|c| c.pass && c.slack == 0.0));
        for seed in 0..5 {
            let checks = monotonicity_check(&lcg_map(seed, 3, 16), &rgrid, &res).unwrap();
            assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        }
    }

    #[test]
    fn subharmonicity_examples() {
        let grid = [c(0.0, 0.0), c(0.3, 0.2), c(-0.5, 0.1)];
        let checks = subharmonicity_check(&identity(), &grid, 0.3).unwrap();
        assert!(checks.iter().all(|c| c.pass));
        let checks = subharmonicity_check(&constant(), &grid, 0.3).unwrap();
        assert!(checks.iter().all(|c| c.pass && c.slack.abs() < 1e-12));
        assert!(subharmonicity_check(&identity(), &[c(0.8, 0.0)], 0.3).is_err());
        for seed in 0..5 {
            let checks = subharmonicity_check(&lcg_map(seed, 2, 16), &grid, 0.2).unwrap();
            assert!(checks.iter().all(|c| c.pass));
        }
    }

    proptest! {
        #[test]
        fn kstar_at_least_one(seed in 0u64..1000, x in -0.8f64..0.8, y in -0.5f64..0.5) {
            let f = fundamental_forms(&lcg_map(seed, 3, 8), c(x, y));
            prop_assert!(f.e * f.g - f.fmix * f.fmix >= -1e-12);
            if let Some(k) = f.kstar() {
                prop_assert!(k >= 1.0 - 1e-12);
            }
        }

        #[test]
        fn isoperimetric_random(seed in 0u64..1000) {
            let u = lcg_map(seed, 3, 10);
            let res = Resolution {
                boundary: 512,
                diameter: 64,
                rule: PolarRule { panels: 2, nodes: 32, angles: 64, degree: 0 },
            };
            prop_assert!(isoperimetric_check(&u, 0.95, &res).unwrap().pass);
        }
    }
}

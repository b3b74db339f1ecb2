//! Inequality checks and the aggregate geometry report.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::Result;
use crate::geometry::{
    coefficient_length_from, diameter, diameter_distortion_from, dirichlet_parseval_within,
    disk_integrals, energy_area_from, interior_length_from, isoperimetric_from, length,
    monotonicity_check, subharmonicity_check, vector_origin_from, Resolution,
    MAX_AREA_RADIUS,
};
use crate::schwarz::richardson3;
use crate::series::HarmonicMap;
use crate::tangent::interior_vector_check;
use crate::C64;

/// One inequality `lhs <= rhs`, with `slack = rhs - lhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// Absolute tolerance; the check passes iff `slack >= -tolerance`.
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = rhs - lhs;
        Check {
            name: name.into(),
            lhs,
            rhs,
            slack,
            tolerance,
            pass: slack >= -tolerance,
        }
    }

    /// The pair with the smallest slack; an empty grid gives a vacuous pass.
    pub fn worst<I>(name: impl Into<String>, pairs: I, tolerance: f64) -> Self
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut worst: Option<(f64, f64)> = None;
        for (lhs, rhs) in pairs {
            let slack = rhs - lhs;
            // NaN slack always wins so it surfaces as a failure
            let replace = match worst {
                None => true,
                Some((l, r)) => slack.is_nan() || slack < r - l,
            };
            if replace {
                worst = Some((lhs, rhs));
            }
        }
        let (lhs, rhs) = worst.unwrap_or((0.0, 0.0));
        Check::new(name, lhs, rhs, tolerance)
    }

    /// Same check under a new name.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Raises the tolerance to at least `floor` and re-evaluates `pass`.
    pub fn with_tolerance_floor(mut self, floor: f64) -> Self {
        self.tolerance = self.tolerance.max(floor);
        self.pass = self.slack >= -self.tolerance;
        self
    }
}

/// Boundary length, area, diameter, energy and qc coefficient of a map,
/// together with every inequality evaluated on it.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometryReport {
    /// Evaluation radius; `1` when boundary values were extrapolated.
    pub radius: f64,
    pub length: f64,
    pub area: f64,
    pub diameter: f64,
    pub dirichlet: f64,
    /// `None` when the map is not quasiconformal on the sampled grid.
    pub kstar: Option<f64>,
    pub checks: Vec<Check>,
    /// Tangent-plane checks of vector maps, keyed by interior point.
    pub tangent_checks: Vec<TangentChecks>,
    /// Alternative readings that are reported but never fail the report.
    pub informational: Vec<Check>,
}

impl GeometryReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
            && self
                .tangent_checks
                .iter()
                .all(|t| t.checks.iter().all(|c| c.pass))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentChecks {
    pub point: (f64, f64),
    pub checks: Vec<Check>,
}

/// Radii used for extrapolated boundary quantities.
pub const EXTRAPOLATION_RADII: [f64; 3] = [1.0 - 4e-4, 1.0 - 2e-4, 1.0 - 1e-4];

/// Settings of [`analyze`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub radius: f64,
    pub resolution: Resolution,
    /// Extrapolate `L` and `d` to the unit circle from [`EXTRAPOLATION_RADII`].
    pub extrapolate: bool,
    /// Lower bound applied to every check's tolerance.
    pub tolerance: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            radius: 1.0 - 1e-4,
            resolution: Resolution::default(),
            extrapolate: false,
            tolerance: 0.0,
        }
    }
}

fn extrapolated(f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let [a, b, c] = EXTRAPOLATION_RADII;
    let values = [f(a)?, f(b)?, f(c)?].map(|v| C64::new(v, 0.0));
    Ok(richardson3(values).re)
}

fn interior_grid() -> Vec<C64> {
    let mut grid = Vec::with_capacity(25);
    for i in 0..5 {
        let r = 0.1 + 0.2 * i as f64;
        for j in 0..5 {
            grid.push(C64::from_polar(r, 2.0 * PI * (j as f64 + 0.5 * i as f64) / 5.0));
        }
    }
    grid
}

fn submean_grid() -> Vec<C64> {
    (0..20)
        .map(|j| C64::from_polar(0.3 * (1 + j % 2) as f64, 2.0 * PI * j as f64 / 20.0))
        .collect()
}

/// Nine interior points for the tangent-plane checks.
pub fn tangent_points() -> Vec<C64> {
    let mut points = vec![C64::new(0.0, 0.0)];
    for k in 0..4 {
        let t = PI / 2.0 * k as f64;
        points.push(C64::from_polar(0.3, t));
        points.push(C64::from_polar(0.6, t + PI / 4.0));
    }
    points
}

/// Computes every functional of the map and every inequality that applies
/// to it: planar checks when the target is at most two-dimensional, tangent
/// checks when it is at least three-dimensional. Sample counts are raised
/// with [`Resolution::for_degree`].
pub fn analyze(map: &HarmonicMap, opts: &AnalysisOptions) -> Result<GeometryReport> {
    let u = map.to_vector();
    let res = opts.resolution.for_degree(u.degree());
    let r = opts.radius;
    let (l, d, eval_radius) = if opts.extrapolate {
        (
            extrapolated(|s| length(&u, s, res.boundary))?,
            extrapolated(|s| diameter(&u, s, res.diameter))?,
            1.0,
        )
    } else {
        (length(&u, r, res.boundary)?, diameter(&u, r, res.diameter)?, r)
    };
    let area_radius = if opts.extrapolate { EXTRAPOLATION_RADII[2] } else { r.min(MAX_AREA_RADIUS) };
    let integrals = disk_integrals(&u, area_radius, &res.rule)?;

    let mut checks = vec![isoperimetric_from(l, integrals.area)];
    let mut informational = Vec::new();
    let qc = integrals.qc().ok();
    if let Some(qc) = qc {
        checks.push(energy_area_from(&integrals, qc.kstar));
        let dirichlet = integrals.dirichlet;
        checks.push(Check::new(
            "energy_area_appendix",
            dirichlet,
            4.0 * qc.kstar * integrals.area,
            1e-9 * dirichlet,
        ));
        informational.push(Check::new(
            "energy_area_e_plus_fmix",
            dirichlet,
            2.0 * integrals.kstar_e_plus_fmix.max(0.0) * integrals.area,
            1e-9 * dirichlet,
        ));
    }
    let parseval = dirichlet_parseval_within(&u, area_radius);
    checks.push(Check::new(
        "parseval_consistency",
        (integrals.dirichlet - parseval).abs(),
        1e-6 * parseval,
        1e-300,
    ));
    checks.extend(diameter_distortion_from(&u, eval_radius, d, l));
    checks.extend(vector_origin_from(&u, eval_radius, l));
    if let Some(f) = map.to_planar() {
        checks.push(coefficient_length_from(&f, eval_radius, l));
        checks.extend(interior_length_from(&f, &interior_grid(), eval_radius, l)?);
    }
    let top = if opts.extrapolate { EXTRAPOLATION_RADII[2] } else { r };
    let rgrid: Vec<f64> = (1..=10).map(|j| top * j as f64 / 10.0).collect();
    checks.extend(monotonicity_check(&u, &rgrid, &res)?);
    for rho in [0.1, 0.2, 0.3] {
        for c in subharmonicity_check(&u, &submean_grid(), rho)? {
            let name = with_radius(&c.name, rho);
            checks.push(c.renamed(name));
        }
    }

    let mut tangent_checks = Vec::new();
    if u.dimension() >= 3 {
        for z in tangent_points() {
            tangent_checks.push(TangentChecks {
                point: (z.re, z.im),
                checks: interior_vector_check(&u, z, top, &res)?,
            });
        }
    }

    let floor = opts.tolerance;
    let checks = checks.into_iter().map(|c| c.with_tolerance_floor(floor)).collect();
    for t in &mut tangent_checks {
        t.checks = core::mem::take(&mut t.checks)
            .into_iter()
            .map(|c| c.with_tolerance_floor(floor))
            .collect();
    }
    Ok(GeometryReport {
        radius: eval_radius,
        length: l,
        area: integrals.area,
        diameter: d,
        dirichlet: integrals.dirichlet,
        kstar: qc.map(|q| q.kstar),
        checks,
        tangent_checks,
        informational,
    })
}

fn with_radius(name: &str, rho: f64) -> String {
    let tenths = (rho * 10.0 + 0.5) as u32;
    alloc::format!("{name}_rho_0.{tenths}")
}

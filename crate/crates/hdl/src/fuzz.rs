//! Fuzz campaigns: random maps through every applicable inequality.
//!
//! Case `i` of a campaign with seed `s` uses the map seed `s + i` (wrapping),
//! so a failing case is reproduced by a campaign of one case seeded with its
//! map seed.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use hdl_core::geometry::{
    diameter_distortion_check, monotonicity_check, subharmonicity_check, PolarRule, Resolution,
};
use hdl_core::hyperbolic::schwarz_pick_check;
use hdl_core::report::{analyze, AnalysisOptions};
use hdl_core::schwarz::{
    envelope_check, gradient_bound_interior, gradient_bound_origin, interior_envelope, khavinson_bound,
    modulus_envelope_check,
};
use hdl_core::series::HarmonicMap;
use hdl_core::{Check, ComplexSeries, PlanarHarmonicMap, VectorHarmonicMap, C64, SLACK_TOLERANCE};
use serde::Serialize;

use crate::error::{HdlError, Result};
use crate::random::{random_map, Target};

/// Upper edges of the slack histogram bins; the last bin is open.
pub const SLACK_BIN_EDGES: [f64; 7] = [0.0, 1e-12, 1e-9, 1e-6, 1e-3, 1.0, 1e3];

/// Failures kept verbatim in a report.
pub const MAX_RECORDED_FAILURES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    pub degree: usize,
    #[serde(serialize_with = "target_name")]
    pub target: Target,
    /// Radius at which boundary quantities are read.
    pub radius: f64,
    /// Lower bound for every check's tolerance.
    pub tolerance: f64,
}

fn target_name<S: serde::Serializer>(t: &Target, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(t.name())
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 42,
            count: 100,
            degree: 16,
            target: Target::Planar,
            radius: 1.0 - 1e-4,
            tolerance: SLACK_TOLERANCE,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.count < 1 {
            return Err(HdlError::Config("count must be at least 1".into()));
        }
        if self.degree < 1 {
            return Err(HdlError::Config("degree must be at least 1".into()));
        }
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return Err(HdlError::Config(format!("radius {} is not in (0, 1)", self.radius)));
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return Err(HdlError::Config(format!("tolerance {} is not a finite nonnegative number", self.tolerance)));
        }
        Ok(())
    }

    pub fn map_seed(&self, case: usize) -> u64 {
        self.seed.wrapping_add(case as u64)
    }
}

/// Sample counts used for fuzz cases.
pub fn fuzz_resolution() -> Resolution {
    Resolution {
        boundary: 1024,
        diameter: 256,
        rule: PolarRule { panels: 4, nodes: 32, angles: 256, degree: 0 },
    }
}

/// The origin and 24 points on circles of radius 0.2, 0.4, 0.6, 0.8.
pub fn interior_points() -> Vec<C64> {
    let mut points = vec![C64::new(0.0, 0.0)];
    for i in 1..=4 {
        for j in 0..6 {
            let t = 2.0 * PI * (j as f64 + 0.25 * i as f64) / 6.0;
            points.push(C64::from_polar(0.2 * i as f64, t));
        }
    }
    points
}

/// Radii `0.03 k`, `k = 1..=32`, of the envelope grid.
pub fn envelope_radii() -> Vec<f64> {
    (1..=32).map(|k| 0.03 * k as f64).collect()
}

/// 32 uniform angles of the envelope grid.
pub fn envelope_angles() -> Vec<f64> {
    (0..32).map(|k| 2.0 * PI * k as f64 / 32.0).collect()
}

fn submean_points() -> Vec<C64> {
    (0..20)
        .map(|j| C64::from_polar(0.3 * (1 + j % 2) as f64, 2.0 * PI * j as f64 / 20.0))
        .collect()
}

/// Schwarz-type checks for `u = Re F` with values in `(-1, 1)`.
pub fn interval_checks(f: &ComplexSeries, prefix: &str) -> Result<Vec<Check>> {
    let tol = SLACK_TOLERANCE;
    let u = VectorHarmonicMap::scalar(f.clone());
    let env = envelope_check(&u, &envelope_radii(), &envelope_angles())?;
    let zero = C64::new(0.0, 0.0);
    let a = f.coeff(0).re;
    let (_, df0) = f.eval_with_derivative(zero);
    let points = interior_points();
    let mut interior = Vec::with_capacity(points.len());
    let mut khavinson = Vec::with_capacity(points.len());
    for &z in &points {
        let (w, dw) = f.eval_with_derivative(z);
        interior.push((dw.norm(), gradient_bound_interior(z, w.re)?));
        khavinson.push((dw.norm(), khavinson_bound(z)?));
    }
    let anchor = C64::from_polar(0.5, 1.0);
    let b = f.eval(anchor).re;
    let mut upper = Vec::with_capacity(points.len());
    let mut lower = Vec::with_capacity(points.len());
    for &z in &points {
        let v = f.eval(z).re;
        upper.push((v, interior_envelope(z, anchor, b)?));
        lower.push((-v, interior_envelope(z, anchor, -b)?));
    }
    let checks = vec![
        env.upper,
        env.lower,
        Check::new("gradient_origin", df0.norm(), gradient_bound_origin(a)?, tol),
        Check::worst("gradient_interior", interior, tol),
        Check::worst("khavinson", khavinson, tol),
        schwarz_pick_check(f, &points)?,
        Check::worst("interior_envelope_upper", upper, tol),
        Check::worst("interior_envelope_lower", lower, tol),
    ];
    Ok(checks.into_iter().map(|c| {
        let name = format!("{prefix}{}", c.name);
        c.renamed(name)
    }).collect())
}

fn scalar_geometry_checks(f: &ComplexSeries, radius: f64) -> Result<Vec<Check>> {
    let u = VectorHarmonicMap::scalar(f.clone());
    let res = fuzz_resolution().for_degree(f.degree());
    let mut checks = diameter_distortion_check(&u, radius, &res)?;
    let rgrid: Vec<f64> = (1..=10).map(|j| radius * j as f64 / 10.0).collect();
    checks.extend(monotonicity_check(&u, &rgrid, &res)?);
    for rho in [0.1, 0.2, 0.3] {
        for c in subharmonicity_check(&u, &submean_points(), rho)? {
            let name = format!("{}_rho_0.{}", c.name, (rho * 10.0 + 0.5) as u32);
            checks.push(c.renamed(name));
        }
    }
    Ok(checks)
}

/// Checks for a planar map into the unit disk: the modulus envelope and the
/// interval checks on both coordinates.
pub fn disk_checks(f: &PlanarHarmonicMap) -> Result<Vec<Check>> {
    let mut checks = vec![modulus_envelope_check(f, &envelope_radii(), &envelope_angles())?];
    checks.extend(interval_checks(&f.g.add(&f.h), "re_")?);
    let im = f.g.sub(&f.h).scale(C64::new(0.0, -1.0));
    checks.extend(interval_checks(&im, "im_")?);
    Ok(checks)
}

/// Every check that applies to the random map of one case.
pub fn case_checks(map_seed: u64, config: &FuzzConfig) -> Result<Vec<Check>> {
    let map = random_map(map_seed, config.degree, config.target);
    let opts = AnalysisOptions {
        radius: config.radius,
        resolution: fuzz_resolution(),
        extrapolate: false,
        tolerance: config.tolerance,
    };
    let mut checks = match (&map, config.target) {
        (HarmonicMap::Vector(u), Target::Interval) => {
            let f = &u.components()[0];
            let mut checks = interval_checks(f, "")?;
            checks.extend(scalar_geometry_checks(f, config.radius)?);
            checks
        }
        (HarmonicMap::Planar(f), Target::Disk) => {
            let mut checks = disk_checks(f)?;
            checks.extend(analyze(&map, &opts)?.checks);
            checks
        }
        _ => {
            let report = analyze(&map, &opts)?;
            let mut checks = report.checks;
            for t in report.tangent_checks {
                checks.extend(t.checks.into_iter().map(|c| {
                    let name = format!("{}_at_{:.2}_{:.2}", c.name, t.point.0, t.point.1);
                    c.renamed(name)
                }));
            }
            checks
        }
    };
    for c in &mut checks {
        *c = c.clone().with_tolerance_floor(config.tolerance);
    }
    Ok(checks)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WorstCase {
    pub check_name: String,
    pub map_seed: u64,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseFailure {
    pub case: usize,
    pub map_seed: u64,
    pub check_name: String,
    pub slack: f64,
    /// Set when the case could not be evaluated at all.
    pub error: Option<String>,
}

/// Slack distribution of one check over a campaign. `bins[0]` counts
/// negative slacks; `bins[k]` counts slacks in
/// `[SLACK_BIN_EDGES[k-1], SLACK_BIN_EDGES[k])`; the last bin is unbounded.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlackHistogram {
    pub count: usize,
    pub failed: usize,
    pub min_slack: f64,
    pub bins: [usize; SLACK_BIN_EDGES.len() + 1],
}

impl SlackHistogram {
    fn new() -> Self {
        SlackHistogram { count: 0, failed: 0, min_slack: f64::INFINITY, bins: [0; SLACK_BIN_EDGES.len() + 1] }
    }

    fn record(&mut self, check: &Check) {
        self.count += 1;
        if !check.pass {
            self.failed += 1;
        }
        if check.slack.is_nan() || check.slack < self.min_slack {
            self.min_slack = check.slack;
        }
        let bin = SLACK_BIN_EDGES
            .iter()
            .position(|&edge| check.slack.is_nan() || check.slack < edge)
            .unwrap_or(SLACK_BIN_EDGES.len());
        self.bins[bin] += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub cases_run: usize,
    pub cases_passed: usize,
    pub worst: Option<WorstCase>,
    /// The first [`MAX_RECORDED_FAILURES`] failures in case order.
    pub failures: Vec<CaseFailure>,
    pub histograms: BTreeMap<String, SlackHistogram>,
}

impl FuzzReport {
    pub fn all_pass(&self) -> bool {
        self.cases_passed == self.cases_run
    }

    pub fn histogram(&self, name: &str) -> Option<&SlackHistogram> {
        self.histograms.get(name)
    }
}

pub fn run_fuzz(config: &FuzzConfig) -> Result<FuzzReport> {
    config.validate()?;
    let mut report = FuzzReport {
        config: *config,
        cases_run: 0,
        cases_passed: 0,
        worst: None,
        failures: Vec::new(),
        histograms: BTreeMap::new(),
    };
    for case in 0..config.count {
        let map_seed = config.map_seed(case);
        report.cases_run += 1;
        let checks = match case_checks(map_seed, config) {
            Ok(checks) => checks,
            Err(e) => {
                if report.failures.len() < MAX_RECORDED_FAILURES {
                    report.failures.push(CaseFailure {
                        case,
                        map_seed,
                        check_name: "evaluation".into(),
                        slack: f64::NAN,
                        error: Some(e.to_string()),
                    });
                }
                continue;
            }
        };
        let mut passed = true;
        for c in &checks {
            report.histograms.entry(c.name.clone()).or_insert_with(SlackHistogram::new).record(c);
            let worse = match &report.worst {
                None => true,
                Some(w) => !w.slack.is_nan() && (c.slack.is_nan() || c.slack < w.slack),
            };
            if worse {
                report.worst = Some(WorstCase { check_name: c.name.clone(), map_seed, slack: c.slack });
            }
            if !c.pass {
                passed = false;
                if report.failures.len() < MAX_RECORDED_FAILURES {
                    report.failures.push(CaseFailure {
                        case,
                        map_seed,
                        check_name: c.name.clone(),
                        slack: c.slack,
                        error: None,
                    });
                }
            }
        }
        if passed {
            report.cases_passed += 1;
        }
    }
    Ok(report)
}

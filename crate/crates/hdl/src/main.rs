use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hdl_core::extremal::{
    circle_map, duren_example, f_h, f_nu, strip_conformal, strip_map, u_d_map, u_hat_map, HSpec, NuSpec,
};
use hdl_core::geometry::{PolarRule, Resolution};
use hdl_core::hyperbolic::{disk_density, strip_density, strip_distance, strip_distance_quadrature, StripPoint};
use hdl_core::report::{analyze, AnalysisOptions};
use hdl_core::schwarz::{
    boundary_bound, gradient_bound_interior, gradient_bound_origin, khavinson_bound, params, x_minus,
    x_minus_deriv, x_plus, x_plus_deriv,
};
use hdl_core::series::HarmonicMap;
use hdl_core::{Check, ComplexSeries, VectorHarmonicMap, C64, DEFAULT_DEGREE};
use hdl::envelope::write_envelope_csv;
use hdl::fuzz::{run_fuzz, FuzzConfig, FuzzReport};
use hdl::json::{read_map, write_map, write_pretty, ReportJson};
use hdl::random::Target;
use serde::Serialize;

/// Sharp distortion estimates for harmonic maps of the unit disk.
#[derive(Parser)]
#[command(name = "hdl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schwarz-type envelopes and gradient bounds for maps into (-1, 1).
    Bounds(BoundsArgs),
    /// Geometry report and inequality checks for a map given as JSON.
    Analyze(AnalyzeArgs),
    /// Write one of the extremal maps as JSON.
    Extremal(ExtremalArgs),
    /// Run random maps through every applicable check.
    Fuzz(FuzzArgs),
    /// Hyperbolic distance on the strip -1 < Re w < 1.
    Hyperbolic(HyperbolicArgs),
    /// Tabulate X-(r, a), X+(r, a) and dX+/dr as CSV.
    EnvelopeCsv(EnvelopeArgs),
}

#[derive(Args)]
struct BoundsArgs {
    /// Value h(0) = a in (-1, 1).
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    /// Radius in [0, 1) for the envelopes and the interior bounds.
    #[arg(long, default_value_t = 0.5)]
    r: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Map JSON file, or `-` for standard input.
    map: PathBuf,
    /// Radius at which boundary quantities are read.
    #[arg(long, default_value_t = 1.0 - 1e-4)]
    radius: f64,
    /// Boundary samples for lengths; diameters use half as many.
    #[arg(long, default_value_t = 4096)]
    samples: usize,
    /// Extrapolate boundary length and diameter to the unit circle.
    #[arg(long)]
    extrapolate: bool,
    /// Lower bound for every check's tolerance.
    #[arg(long, default_value_t = 0.0)]
    tolerance: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExtremalArgs {
    #[command(subcommand)]
    kind: ExtremalKind,
    /// Truncation degree of the series.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE)]
    degree: usize,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExtremalKind {
    /// (4/π) arctan z, or the conformal map onto the strip with F(z0) = b and
    /// maximal gradient at z0 when `--z0`/`--b` are given.
    Strip {
        /// Point of the disk as `re` or `re:im`.
        #[arg(long, allow_hyphen_values = true)]
        z0: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        b: f64,
    },
    /// (d/π) arg((1+z)/(1-z)).
    Ud {
        #[arg(long, default_value_t = std::f64::consts::PI)]
        d: f64,
    },
    /// The map u-hat.
    Uhat,
    /// f^ν from ω = ν z²; coefficients of ω as `c0,c1,...` with entries `re` or `re:im`.
    Fnu {
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
    /// f_H from H and a = g'(0).
    Fh {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        a: String,
    },
    /// u_k = a_k x - b_k y.
    Circle {
        #[arg(long, allow_hyphen_values = true, default_value = "1,0,0")]
        a: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,1,0")]
        b: String,
    },
    /// Re z/(1-z) + i Im (1/2) log((1+z)/(1-z)).
    Duren,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Degree of the random series.
    #[arg(long, default_value_t = 16)]
    degree: usize,
    /// planar, vector3, interval or disk.
    #[arg(long, default_value_t = Target::Planar)]
    target: Target,
    #[arg(long, default_value_t = 1.0 - 1e-4)]
    radius: f64,
    #[arg(long, default_value_t = hdl_core::SLACK_TOLERANCE)]
    tolerance: f64,
    #[arg(long)]
    json: bool,
    /// Write the JSON report here in addition to the summary.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HyperbolicArgs {
    #[arg(long, allow_hyphen_values = true)]
    u1: f64,
    #[arg(long, allow_hyphen_values = true)]
    u2: f64,
    /// Gauss–Legendre nodes of the quadrature value.
    #[arg(long, default_value_t = 64)]
    nodes: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnvelopeArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    /// Number of rows.
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit status of a run whose checks were evaluated.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Bounds(args) => bounds(&mut out, &args),
        Command::Analyze(args) => analyze_cmd(&mut out, &args),
        Command::Extremal(args) => extremal(&mut out, args),
        Command::Fuzz(args) => fuzz(&mut out, &args),
        Command::Hyperbolic(args) => hyperbolic(&mut out, &args),
        Command::EnvelopeCsv(args) => envelope(&mut out, &args),
    }
}

fn output<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(stdout),
    })
}

#[derive(Serialize)]
struct BoundsJson {
    a: f64,
    r: f64,
    s: f64,
    alpha: f64,
    x_minus: f64,
    x_plus: f64,
    x_minus_deriv: f64,
    x_plus_deriv: f64,
    gradient_origin: f64,
    gradient_interior: f64,
    khavinson: f64,
    boundary: f64,
}

fn bounds(out: &mut dyn Write, args: &BoundsArgs) -> Result<Outcome> {
    let p = params(args.a)?;
    let z = C64::new(args.r, 0.0);
    let b = BoundsJson {
        a: args.a,
        r: args.r,
        s: p.s,
        alpha: p.alpha,
        x_minus: x_minus(args.r, args.a)?,
        x_plus: x_plus(args.r, args.a)?,
        x_minus_deriv: x_minus_deriv(args.r, args.a)?,
        x_plus_deriv: x_plus_deriv(args.r, args.a)?,
        gradient_origin: gradient_bound_origin(args.a)?,
        gradient_interior: gradient_bound_interior(z, args.a)?,
        khavinson: khavinson_bound(z)?,
        boundary: boundary_bound(args.a.abs())?,
    };
    if args.json {
        write_pretty(out, &b)?;
        return Ok(Outcome::Pass);
    }
    let rows = [
        ("s(a)", b.s),
        ("alpha(a)", b.alpha),
        ("X-(r,a)", b.x_minus),
        ("X+(r,a)", b.x_plus),
        ("dX-/dr", b.x_minus_deriv),
        ("dX+/dr", b.x_plus_deriv),
        ("gradient bound at 0", b.gradient_origin),
        ("gradient bound at r (h(r) = a)", b.gradient_interior),
        ("Khavinson bound at r", b.khavinson),
        ("boundary bound (|f(0)| = |a|)", b.boundary),
    ];
    writeln!(out, "a = {}, r = {}", b.a, b.r)?;
    for (name, v) in rows {
        writeln!(out, "{name:<32} {v:>22.15e}")?;
    }
    Ok(Outcome::Pass)
}

fn load_map(path: &Path) -> Result<HarmonicMap> {
    if path == Path::new("-") {
        return Ok(read_map(io::stdin().lock())?);
    }
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_map(io::BufReader::new(file)).with_context(|| format!("cannot read a map from {}", path.display()))
}

fn print_checks(out: &mut dyn Write, checks: &[Check]) -> io::Result<()> {
    for c in checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "  {mark} {:<40} lhs {:>13.6e}  rhs {:>13.6e}  slack {:>13.6e}",
            c.name, c.lhs, c.rhs, c.slack
        )?;
    }
    Ok(())
}

fn analyze_cmd(out: &mut dyn Write, args: &AnalyzeArgs) -> Result<Outcome> {
    let map = load_map(&args.map)?;
    if args.samples < 64 {
        bail!("--samples must be at least 64");
    }
    let opts = AnalysisOptions {
        radius: args.radius,
        resolution: Resolution {
            boundary: args.samples,
            diameter: args.samples / 2,
            rule: PolarRule::default(),
        },
        extrapolate: args.extrapolate,
        tolerance: args.tolerance,
    };
    let report = analyze(&map, &opts)?;
    if args.json {
        write_pretty(&mut *out, &ReportJson::from(&report))?;
    } else {
        writeln!(out, "radius     {:.16e}", report.radius)?;
        writeln!(out, "L          {:.16e}", report.length)?;
        writeln!(out, "A          {:.16e}", report.area)?;
        writeln!(out, "d          {:.16e}", report.diameter)?;
        writeln!(out, "dirichlet  {:.16e}", report.dirichlet)?;
        match report.kstar {
            Some(k) => writeln!(out, "Kstar      {k:.16e}")?,
            None => writeln!(out, "Kstar      not quasiconformal on the grid")?,
        }
        writeln!(out, "checks")?;
        print_checks(out, &report.checks)?;
        for t in &report.tangent_checks {
            writeln!(out, "tangent checks at ({}, {})", t.point.0, t.point.1)?;
            print_checks(out, &t.checks)?;
        }
        if !report.informational.is_empty() {
            writeln!(out, "informational")?;
            print_checks(out, &report.informational)?;
        }
    }
    Ok(if report.all_pass() { Outcome::Pass } else { Outcome::Fail })
}

fn parse_complex(s: &str) -> Result<C64> {
    let s = s.trim();
    let (re, im) = match s.split_once(':') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    let re: f64 = re.trim().parse().with_context(|| format!("bad number `{re}`"))?;
    let im: f64 = im.trim().parse().with_context(|| format!("bad number `{im}`"))?;
    Ok(C64::new(re, im))
}

fn parse_series(s: &str) -> Result<ComplexSeries> {
    Ok(ComplexSeries::new(s.split(',').map(parse_complex).collect::<Result<_>>()?))
}

fn parse_reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().with_context(|| format!("bad number `{x}`")))
        .collect()
}

fn extremal(out: &mut dyn Write, args: ExtremalArgs) -> Result<Outcome> {
    let n = args.degree;
    let map = match args.kind {
        ExtremalKind::Strip { z0: None, b: 0.0 } => HarmonicMap::Vector(VectorHarmonicMap::scalar(strip_map(n))),
        ExtremalKind::Strip { z0, b } => {
            let z0 = z0.as_deref().map(parse_complex).transpose()?.unwrap_or(C64::new(0.0, 0.0));
            HarmonicMap::Vector(VectorHarmonicMap::scalar(strip_conformal(z0, b, n)?))
        }
        ExtremalKind::Ud { d } => HarmonicMap::Vector(u_d_map(d, n)?),
        ExtremalKind::Uhat => HarmonicMap::Vector(u_hat_map(n)),
        ExtremalKind::Fnu { omega } => HarmonicMap::Planar(f_nu(&NuSpec::new(parse_series(&omega)?)?, n)?),
        ExtremalKind::Fh { h, a } => {
            HarmonicMap::Planar(f_h(&HSpec::new(parse_series(&h)?, parse_complex(&a)?)?, n))
        }
        ExtremalKind::Circle { a, b } => HarmonicMap::Vector(circle_map(&parse_reals(&a)?, &parse_reals(&b)?)?),
        ExtremalKind::Duren => HarmonicMap::Planar(duren_example(n)),
    };
    let mut w = output(&args.out, out)?;
    write_map(&mut w, &map)?;
    w.flush()?;
    Ok(Outcome::Pass)
}

fn fuzz(out: &mut dyn Write, args: &FuzzArgs) -> Result<Outcome> {
    let config = FuzzConfig {
        seed: args.seed,
        count: args.count,
        degree: args.degree,
        target: args.target,
        radius: args.radius,
        tolerance: args.tolerance,
    };
    let report = run_fuzz(&config)?;
    if let Some(path) = &args.out {
        let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        write_pretty(BufWriter::new(file), &report)?;
    }
    if args.json {
        write_pretty(&mut *out, &report)?;
    } else {
        print_fuzz_summary(out, &report)?;
    }
    Ok(if report.all_pass() { Outcome::Pass } else { Outcome::Fail })
}

fn print_fuzz_summary(out: &mut dyn Write, report: &FuzzReport) -> io::Result<()> {
    let c = &report.config;
    writeln!(
        out,
        "target {} seed {} count {} degree {} radius {} tolerance {:e}",
        c.target, c.seed, c.count, c.degree, c.radius, c.tolerance
    )?;
    writeln!(out, "cases passed {}/{}", report.cases_passed, report.cases_run)?;
    if let Some(w) = &report.worst {
        writeln!(out, "worst slack {:.6e} in {} (map seed {})", w.slack, w.check_name, w.map_seed)?;
    }
    writeln!(out, "{:<48} {:>6} {:>6} {:>14}", "check", "count", "failed", "min slack")?;
    for (name, h) in &report.histograms {
        writeln!(out, "{name:<48} {:>6} {:>6} {:>14.6e}", h.count, h.failed, h.min_slack)?;
    }
    for f in &report.failures {
        match &f.error {
            Some(e) => writeln!(out, "ERROR case {} (map seed {}): {e}", f.case, f.map_seed)?,
            None => writeln!(
                out,
                "FAIL case {} (map seed {}): {} slack {:.6e}",
                f.case, f.map_seed, f.check_name, f.slack
            )?,
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct HyperbolicJson {
    u1: f64,
    u2: f64,
    distance: f64,
    quadrature: f64,
    density_u1: f64,
    density_u2: f64,
    disk_density_u1: f64,
    disk_density_u2: f64,
}

fn hyperbolic(out: &mut dyn Write, args: &HyperbolicArgs) -> Result<Outcome> {
    let point = |u: f64| StripPoint::new(C64::new(u, 0.0));
    let h = HyperbolicJson {
        u1: args.u1,
        u2: args.u2,
        distance: strip_distance(args.u1, args.u2)?,
        quadrature: strip_distance_quadrature(args.u1, args.u2, args.nodes)?,
        density_u1: strip_density(point(args.u1)?),
        density_u2: strip_density(point(args.u2)?),
        disk_density_u1: disk_density(C64::new(args.u1, 0.0))?,
        disk_density_u2: disk_density(C64::new(args.u2, 0.0))?,
    };
    if args.json {
        write_pretty(out, &h)?;
    } else {
        writeln!(out, "strip distance          {:.16e}", h.distance)?;
        writeln!(out, "quadrature ({:>3} nodes)  {:.16e}", args.nodes, h.quadrature)?;
        writeln!(out, "strip density at u1     {:.16e}", h.density_u1)?;
        writeln!(out, "strip density at u2     {:.16e}", h.density_u2)?;
        writeln!(out, "disk density at u1      {:.16e}", h.disk_density_u1)?;
        writeln!(out, "disk density at u2      {:.16e}", h.disk_density_u2)?;
    }
    Ok(Outcome::Pass)
}

fn envelope(out: &mut dyn Write, args: &EnvelopeArgs) -> Result<Outcome> {
    let mut w = output(&args.out, out)?;
    write_envelope_csv(&mut w, args.a, args.steps)?;
    w.flush()?;
    Ok(Outcome::Pass)
}

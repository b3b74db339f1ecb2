//! JSON encodings of series, maps and reports.
//!
//! A series is `{"coeffs": [[re, im], ...]}` with `coeffs[k]` the `z^k`
//! coefficient. A planar map is `{"kind": "planar", "g": series, "h": series}`
//! and a vector map `{"kind": "vector", "F": [series, ...]}`. A bare series is
//! accepted wherever a map is read and stands for the analytic map `g`.
//!
//! Every float is written in scientific notation with 17 significant digits,
//! so that a value read back is bit-identical. Non-finite values become
//! `null`.

use std::io::{self, Read, Write};

use hdl_core::report::TangentChecks;
use hdl_core::series::HarmonicMap;
use hdl_core::{Check, ComplexSeries, GeometryReport, PlanarHarmonicMap, VectorHarmonicMap, C64};
use serde::ser::Serialize;
use serde::{Deserialize, Serialize as SerializeDerive};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::error::{HdlError, Result};

#[derive(Clone, Debug, PartialEq, SerializeDerive, Deserialize)]
pub struct SeriesJson {
    pub coeffs: Vec<[f64; 2]>,
}

impl From<&ComplexSeries> for SeriesJson {
    fn from(s: &ComplexSeries) -> Self {
        SeriesJson { coeffs: s.coeffs().iter().map(|c| [c.re, c.im]).collect() }
    }
}

impl From<&SeriesJson> for ComplexSeries {
    fn from(s: &SeriesJson) -> Self {
        ComplexSeries::new(s.coeffs.iter().map(|&[re, im]| C64::new(re, im)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, SerializeDerive, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapJson {
    Planar { g: SeriesJson, h: SeriesJson },
    Vector {
        #[serde(rename = "F")]
        f: Vec<SeriesJson>,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MapInput {
    Map(MapJson),
    Series(SeriesJson),
}

impl From<&HarmonicMap> for MapJson {
    fn from(map: &HarmonicMap) -> Self {
        match map {
            HarmonicMap::Planar(f) => MapJson::Planar { g: (&f.g).into(), h: (&f.h).into() },
            HarmonicMap::Vector(u) => MapJson::Vector { f: u.components().iter().map(Into::into).collect() },
        }
    }
}

impl TryFrom<&MapJson> for HarmonicMap {
    type Error = HdlError;

    fn try_from(map: &MapJson) -> Result<Self> {
        Ok(match map {
            MapJson::Planar { g, h } => HarmonicMap::Planar(PlanarHarmonicMap::new(g.into(), h.into())),
            MapJson::Vector { f } => {
                HarmonicMap::Vector(VectorHarmonicMap::new(f.iter().map(Into::into).collect())?)
            }
        })
    }
}

fn check_finite(map: &HarmonicMap) -> Result<()> {
    let finite = |s: &ComplexSeries| s.coeffs().iter().all(|c| c.re.is_finite() && c.im.is_finite());
    let ok = match map {
        HarmonicMap::Planar(f) => finite(&f.g) && finite(&f.h),
        HarmonicMap::Vector(u) => u.components().iter().all(finite),
    };
    if ok {
        Ok(())
    } else {
        Err(HdlError::Format("map coefficients must be finite numbers".into()))
    }
}

/// Parses a map (or a bare series) from JSON text.
pub fn parse_map(text: &str) -> Result<HarmonicMap> {
    let input: MapInput = serde_json::from_str(text)?;
    let map = match input {
        MapInput::Map(m) => HarmonicMap::try_from(&m)?,
        MapInput::Series(s) => HarmonicMap::Planar(PlanarHarmonicMap::analytic((&s).into())),
    };
    check_finite(&map)?;
    Ok(map)
}

pub fn read_map<R: Read>(mut reader: R) -> Result<HarmonicMap> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_map(&text)
}

/// Writes the map on one line followed by a newline.
pub fn write_map<W: Write>(writer: W, map: &HarmonicMap) -> Result<()> {
    write_compact(writer, &MapJson::from(map))
}

/// A `serde_json` formatter that prints floats with 17 significant digits
/// and delegates layout to `F`.
pub struct Digits17<F>(pub F);

macro_rules! delegate {
    ($($name:ident),*) => {
        $(
            fn $name<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
                self.0.$name(writer)
            }
        )*
    };
}

impl<F: Formatter> Formatter for Digits17<F> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    delegate!(begin_array, end_array, end_array_value, begin_object, end_object, begin_object_value, end_object_value);
}

/// Pretty-printed JSON with 17-digit floats and a trailing newline.
pub fn write_pretty<W: Write, T: Serialize + ?Sized>(mut writer: W, value: &T) -> Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut writer, Digits17(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    writer.write_all(b"\n")?;
    Ok(())
}

/// Single-line JSON with 17-digit floats and a trailing newline.
pub fn write_compact<W: Write, T: Serialize + ?Sized>(mut writer: W, value: &T) -> Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut writer, Digits17(CompactFormatter));
    value.serialize(&mut ser)?;
    writer.write_all(b"\n")?;
    Ok(())
}

pub fn to_pretty_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    write_pretty(&mut buf, value)?;
    Ok(String::from_utf8(buf).expect("JSON output is UTF-8"))
}

#[derive(Clone, Debug, PartialEq, SerializeDerive)]
pub struct CheckJson {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl From<&Check> for CheckJson {
    fn from(c: &Check) -> Self {
        CheckJson {
            name: c.name.clone(),
            lhs: c.lhs,
            rhs: c.rhs,
            slack: c.slack,
            tolerance: c.tolerance,
            pass: c.pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, SerializeDerive)]
pub struct TangentJson {
    pub point: [f64; 2],
    pub checks: Vec<CheckJson>,
}

impl From<&TangentChecks> for TangentJson {
    fn from(t: &TangentChecks) -> Self {
        TangentJson { point: [t.point.0, t.point.1], checks: t.checks.iter().map(Into::into).collect() }
    }
}

/// The report of `hdl analyze`.
#[derive(Clone, Debug, PartialEq, SerializeDerive)]
pub struct ReportJson {
    pub radius: f64,
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "A")]
    pub area: f64,
    pub d: f64,
    pub dirichlet: f64,
    #[serde(rename = "Kstar")]
    pub kstar: Option<f64>,
    pub all_pass: bool,
    pub checks: Vec<CheckJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tangent_checks: Vec<TangentJson>,
    pub informational: Vec<CheckJson>,
}

impl From<&GeometryReport> for ReportJson {
    fn from(r: &GeometryReport) -> Self {
        ReportJson {
            radius: r.radius,
            length: r.length,
            area: r.area,
            d: r.diameter,
            dirichlet: r.dirichlet,
            kstar: r.kstar,
            all_pass: r.all_pass(),
            checks: r.checks.iter().map(Into::into).collect(),
            tangent_checks: r.tangent_checks.iter().map(Into::into).collect(),
            informational: r.informational.iter().map(Into::into).collect(),
        }
    }
}

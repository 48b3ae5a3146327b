//! Synthetic reference fronts and the text file formats used by the CLI.
//!
//! Populations and reference sets are CSV with one point per row and an
//! optional header row. Pairing files hold two zero-based reference indices
//! per line; window files hold `start_f1,end_f1` per line. Reports are JSON,
//! with a companion `*.plot.csv` listing `coords..., grade, region` per
//! solution.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ObjectiveVector, ReferenceSet};
use crate::metrics::{ComparisonResult, EvaluationReport, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontShape {
    /// `f2 = 1 - sqrt(f1)`
    ConvexSqrt,
    /// `f2 = 1 - f1^2`
    ConcaveQuad,
    /// `f2 = 1 - f1`
    Linear,
}

impl FrontShape {
    pub fn eval(self, f1: f64) -> f64 {
        match self {
            FrontShape::ConvexSqrt => 1.0 - f1.sqrt(),
            FrontShape::ConcaveQuad => 1.0 - f1 * f1,
            FrontShape::Linear => 1.0 - f1,
        }
    }
}

impl FromStr for FrontShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "convex-sqrt" | "convexsqrt" => Ok(FrontShape::ConvexSqrt),
            "concave-quad" | "concavequad" => Ok(FrontShape::ConcaveQuad),
            "linear" => Ok(FrontShape::Linear),
            other => Err(Error::domain(format!(
                "unknown front shape '{other}' (expected convex-sqrt, concave-quad or linear)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontSpec {
    pub shape: FrontShape,
    pub n_points: usize,
    pub f1_range: (f64, f64),
}

impl FrontSpec {
    pub fn new(shape: FrontShape, n_points: usize) -> Self {
        Self {
            shape,
            n_points,
            f1_range: (0.0, 1.0),
        }
    }
}

/// Samples `n_points` equally spaced in f1, endpoints included.
pub fn generate_front(spec: &FrontSpec) -> Result<ReferenceSet> {
    let (lo, hi) = spec.f1_range;
    if spec.n_points < 3 {
        return Err(Error::domain(format!(
            "a front needs at least 3 points, got {}",
            spec.n_points
        )));
    }
    if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo < hi) {
        return Err(Error::domain(format!(
            "f1 range [{lo}, {hi}] must satisfy 0 <= lo < hi"
        )));
    }
    let last = (spec.n_points - 1) as f64;
    let points = (0..spec.n_points)
        .map(|i| {
            let f1 = if i == spec.n_points - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last
            };
            ObjectiveVector::xy(f1, spec.shape.eval(f1))
        })
        .collect::<Result<Vec<_>>>()?;
    ReferenceSet::new(points)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn parse_err(path: &Path, row: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        row,
        msg: msg.into(),
    }
}

/// Reads a CSV population, skipping a non-numeric first row.
pub fn load_population(path: impl AsRef<Path>) -> Result<Vec<ObjectiveVector>> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            other => parse_err(path, 0, format!("{other:?}")),
        })?;

    let mut points = Vec::new();
    let mut width = None;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let row = e.position().map_or(i + 1, |p| p.line() as usize);
            parse_err(path, row, e.to_string())
        })?;
        let row = record.position().map_or(i + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> =
            record.iter().map(str::parse::<f64>).collect();
        let coords = match parsed {
            Ok(coords) => coords,
            Err(_) if i == 0 => continue,
            Err(e) => return Err(parse_err(path, row, format!("bad number: {e}"))),
        };
        match width {
            None => width = Some(coords.len()),
            Some(w) if w != coords.len() => {
                return Err(parse_err(
                    path,
                    row,
                    format!("expected {w} fields, found {}", coords.len()),
                ))
            }
            Some(_) => {}
        }
        let point =
            ObjectiveVector::new(coords).map_err(|e| parse_err(path, row, e.to_string()))?;
        points.push(point);
    }
    Ok(points)
}

pub fn load_reference(path: impl AsRef<Path>) -> Result<ReferenceSet> {
    let path = path.as_ref();
    let points = load_population(path)?;
    ReferenceSet::new(points).map_err(|e| match e {
        Error::Domain(msg) => Error::Domain(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Writes one point per line at full round-trip precision.
pub fn save_population(path: impl AsRef<Path>, points: &[ObjectiveVector]) -> Result<()> {
    let mut out = String::new();
    for p in points {
        out.push_str(&join(p.coords()));
        out.push('\n');
    }
    write(path.as_ref(), &out)
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Reads zero-based reference index pairs, one whitespace-separated pair per
/// line.
pub fn load_pairs(path: impl AsRef<Path>) -> Result<Vec<(usize, usize)>> {
    let path = path.as_ref();
    let text = read(path)?;
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let [a, b] = fields[..] else {
            return Err(parse_err(path, i + 1, "expected two reference indices"));
        };
        let index = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| parse_err(path, i + 1, format!("bad index '{s}': {e}")))
        };
        pairs.push((index(a)?, index(b)?));
    }
    Ok(pairs)
}

/// Reads `start_f1,end_f1` observation windows, one per line.
pub fn load_windows(path: impl AsRef<Path>) -> Result<Vec<Window>> {
    let path = path.as_ref();
    let text = read(path)?;
    let mut windows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [a, b] = fields[..] else {
            return Err(parse_err(path, i + 1, "expected start_f1,end_f1"));
        };
        let value = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(path, i + 1, format!("bad f1 value '{s}'")))
        };
        let w = Window::new(value(a)?, value(b)?);
        if w.start_f1 > w.end_f1 {
            return Err(parse_err(path, i + 1, "window start lies after its end"));
        }
        windows.push(w);
    }
    Ok(windows)
}

/// A report that can be written as JSON, optionally with plot data.
pub trait ReportFile: Serialize {
    /// Lines of `coords..., grade, region`, if the report carries solutions.
    fn plot_data(&self) -> Option<String> {
        None
    }
}

impl ReportFile for EvaluationReport {
    fn plot_data(&self) -> Option<String> {
        let mut out = String::new();
        for s in &self.solutions {
            let _ = writeln!(
                out,
                "{},{},{}",
                join(s.solution.coords()),
                s.grade,
                s.region
            );
        }
        Some(out)
    }
}

impl ReportFile for ComparisonResult {}

/// Companion plot-data path: `report.json` becomes `report.plot.csv`.
pub fn plot_data_path(path: &Path) -> PathBuf {
    path.with_extension("plot.csv")
}

pub fn save_report(report: &impl ReportFile, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut json = serde_json::to_string_pretty(report)
        .map_err(|e| Error::domain(format!("cannot serialize report: {e}")))?;
    json.push('\n');
    write(path, &json)?;
    if let Some(plot) = report.plot_data() {
        write(&plot_data_path(path), &plot)?;
    }
    Ok(())
}

pub fn load_report<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, e.line(), e.to_string()))
}

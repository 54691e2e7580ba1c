//! Shifted CEC 2005 landscapes: F1 (Sphere), F2 (Schwefel 1.2),
//! F6 (Rosenbrock) and F9 (Rastrigin).
//!
//! Each function is `f(z) + bias` with `z = x - o` for the shift vector `o`
//! (`z = x - o + 1` for Rosenbrock, so every optimum sits at `x = o`).

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::push::SearchVector;
use crate::rng::{stream_rng, Stream};

#[derive(Debug, Error)]
pub enum BenchmarkError {
    #[error("point has dimension {got}, function expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown benchmark function `{0}` (expected F1, F2, F6 or F9)")]
    UnknownFunction(String),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("{path}: malformed number `{token}` at line {line}, column {column}")]
    Malformed {
        path: String,
        line: usize,
        column: usize,
        token: String,
    },
    #[error("{path}: need {needed} shift values, found {found}")]
    TooFewValues {
        path: String,
        needed: usize,
        found: usize,
    },
    #[error("shift component {index} ({value}) is not strictly inside the bounds")]
    ShiftOutOfBounds { index: usize, value: f64 },
    #[error("missing shift data file {0}")]
    MissingShiftFile(PathBuf),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BenchmarkId {
    F1,
    F2,
    F6,
    F9,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 4] = [BenchmarkId::F1, BenchmarkId::F2, BenchmarkId::F6, BenchmarkId::F9];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkId::F1 => "Shifted Sphere",
            BenchmarkId::F2 => "Shifted Schwefel 1.2",
            BenchmarkId::F6 => "Shifted Rosenbrock",
            BenchmarkId::F9 => "Shifted Rastrigin",
        }
    }

    /// Objective value at the optimum.
    pub fn bias(self) -> f64 {
        match self {
            BenchmarkId::F1 | BenchmarkId::F2 => -450.0,
            BenchmarkId::F6 => 390.0,
            BenchmarkId::F9 => -330.0,
        }
    }

    /// Per-dimension search interval.
    pub fn interval(self) -> (f64, f64) {
        match self {
            BenchmarkId::F9 => (-5.0, 5.0),
            _ => (-100.0, 100.0),
        }
    }

    /// Conventional shift-data file name for `dimension`.
    pub fn shift_file_name(self, dimension: usize) -> String {
        format!("{self}_shift_D{dimension}.txt")
    }

    /// Unbiased objective of the already-shifted coordinates `z`.
    fn base(self, z: &[f64]) -> f64 {
        match self {
            BenchmarkId::F1 => z.iter().map(|v| v * v).sum(),
            BenchmarkId::F2 => {
                let mut prefix = 0.0;
                z.iter()
                    .map(|v| {
                        prefix += v;
                        prefix * prefix
                    })
                    .sum()
            }
            BenchmarkId::F6 => z
                .windows(2)
                .map(|w| {
                    let a = w[0] * w[0] - w[1];
                    let b = w[0] - 1.0;
                    100.0 * a * a + b * b
                })
                .sum(),
            BenchmarkId::F9 => z
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            BenchmarkId::F1 => "F1",
            BenchmarkId::F2 => "F2",
            BenchmarkId::F6 => "F6",
            BenchmarkId::F9 => "F9",
        })
    }
}

impl FromStr for BenchmarkId {
    type Err = BenchmarkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "F1" => Ok(BenchmarkId::F1),
            "F2" => Ok(BenchmarkId::F2),
            "F6" => Ok(BenchmarkId::F6),
            "F9" => Ok(BenchmarkId::F9),
            _ => Err(BenchmarkError::UnknownFunction(s.to_string())),
        }
    }
}

/// Box bounds of `id` in `dimension` dimensions.
pub fn bounds(id: BenchmarkId, dimension: usize) -> Result<(SearchVector, SearchVector), BenchmarkError> {
    if dimension == 0 {
        return Err(BenchmarkError::ZeroDimension);
    }
    let (lo, hi) = id.interval();
    Ok((SearchVector(vec![lo; dimension]), SearchVector(vec![hi; dimension])))
}

/// Where shift vectors come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShiftSource {
    /// The official CEC 2005 data bundled with the crate (up to 100
    /// dimensions).
    Official,
    /// `<id>_shift_D<dim>.txt` files in a directory.
    Directory(PathBuf),
    /// Seeded uniform draws from the central 80% of the bounds.
    Synthetic { seed: u64 },
}

const OFFICIAL_F1: &str = include_str!("../data/cec2005/F1_shift_D100.txt");
const OFFICIAL_F2: &str = include_str!("../data/cec2005/F2_shift_D100.txt");
const OFFICIAL_F6: &str = include_str!("../data/cec2005/F6_shift_D100.txt");
const OFFICIAL_F9: &str = include_str!("../data/cec2005/F9_shift_D100.txt");

/// A parsed shift-data file.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftDataFile {
    /// Taken from the file name when it follows the naming convention.
    pub function: Option<BenchmarkId>,
    pub dimension: Option<usize>,
    pub values: Vec<f64>,
    origin: String,
}

impl ShiftDataFile {
    /// Parses whitespace-separated reals. `origin` names the source in
    /// error messages.
    pub fn parse(text: &str, origin: &str) -> Result<Self, BenchmarkError> {
        let mut values = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let mut column = 0;
            for token in line.split_whitespace() {
                // byte offset of this token within the line
                let offset = line[column..].find(token).expect("token from line") + column;
                column = offset + token.len();
                let v = token.parse::<f64>().map_err(|_| BenchmarkError::Malformed {
                    path: origin.to_string(),
                    line: line_no + 1,
                    column: offset + 1,
                    token: token.to_string(),
                })?;
                values.push(v);
            }
        }
        Ok(ShiftDataFile {
            function: None,
            dimension: None,
            values,
            origin: origin.to_string(),
        })
    }

    /// The first `dimension` values.
    pub fn vector(&self, dimension: usize) -> Result<SearchVector, BenchmarkError> {
        if self.values.len() < dimension || dimension == 0 {
            return Err(BenchmarkError::TooFewValues {
                path: self.origin.clone(),
                needed: dimension.max(1),
                found: self.values.len(),
            });
        }
        Ok(SearchVector(self.values[..dimension].to_vec()))
    }
}

/// Reads a shift-data file, recovering function id and dimension from a
/// conventional `<id>_shift_D<dim>.txt` name.
pub fn load_shift_data(path: &Path) -> Result<ShiftDataFile, BenchmarkError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            BenchmarkError::MissingShiftFile(path.to_path_buf())
        } else {
            BenchmarkError::Io {
                path: display.clone(),
                source,
            }
        }
    })?;
    let mut file = ShiftDataFile::parse(&text, &display)?;
    if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
        if let Some((id, dim)) = stem.split_once("_shift_D") {
            file.function = id.parse().ok();
            file.dimension = dim.parse().ok();
        }
    }
    if file.values.is_empty() {
        return Err(BenchmarkError::TooFewValues {
            path: display,
            needed: file.dimension.unwrap_or(1),
            found: 0,
        });
    }
    Ok(file)
}

/// One shifted landscape at a fixed dimension. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkFunction {
    pub id: BenchmarkId,
    pub shift: SearchVector,
    pub bias: f64,
    pub lower: SearchVector,
    pub upper: SearchVector,
}

impl BenchmarkFunction {
    /// Fails if the shift is empty or not strictly inside the bounds.
    pub fn new(id: BenchmarkId, shift: SearchVector) -> Result<Self, BenchmarkError> {
        let (lower, upper) = bounds(id, shift.len())?;
        for (i, &o) in shift.iter().enumerate() {
            if !(o > lower[i] && o < upper[i]) {
                return Err(BenchmarkError::ShiftOutOfBounds { index: i, value: o });
            }
        }
        Ok(BenchmarkFunction {
            id,
            shift,
            bias: id.bias(),
            lower,
            upper,
        })
    }

    pub fn official(id: BenchmarkId, dimension: usize) -> Result<Self, BenchmarkError> {
        let text = match id {
            BenchmarkId::F1 => OFFICIAL_F1,
            BenchmarkId::F2 => OFFICIAL_F2,
            BenchmarkId::F6 => OFFICIAL_F6,
            BenchmarkId::F9 => OFFICIAL_F9,
        };
        let origin = format!("built-in {}", id.shift_file_name(100));
        let file = ShiftDataFile::parse(text, &origin)?;
        BenchmarkFunction::new(id, file.vector(dimension)?)
    }

    pub fn synthetic(id: BenchmarkId, dimension: usize, seed: u64) -> Result<Self, BenchmarkError> {
        let (lo, hi) = id.interval();
        let margin = 0.1 * (hi - lo);
        let mut rng = stream_rng(seed, Stream::Shift, &[id as u64, dimension as u64]);
        let shift = (0..dimension)
            .map(|_| rng.random_range(lo + margin..hi - margin))
            .collect();
        BenchmarkFunction::new(id, shift)
    }

    pub fn from_source(
        id: BenchmarkId,
        dimension: usize,
        source: &ShiftSource,
    ) -> Result<Self, BenchmarkError> {
        match source {
            ShiftSource::Official => BenchmarkFunction::official(id, dimension),
            ShiftSource::Synthetic { seed } => BenchmarkFunction::synthetic(id, dimension, *seed),
            ShiftSource::Directory(dir) => {
                let file = load_shift_data(&dir.join(id.shift_file_name(dimension)))?;
                BenchmarkFunction::new(id, file.vector(dimension)?)
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.shift.len()
    }

    /// Objective value at `point`, which may lie outside the bounds.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64, BenchmarkError> {
        if point.len() != self.dimension() {
            return Err(BenchmarkError::DimensionMismatch {
                expected: self.dimension(),
                got: point.len(),
            });
        }
        Ok(self.value(point))
    }

    /// As [`evaluate`](Self::evaluate) for a point already known to have the
    /// right dimension. Points with a non-finite component score +∞.
    pub fn value(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.dimension());
        if point.iter().any(|x| !x.is_finite()) {
            return f64::INFINITY;
        }
        let offset = if self.id == BenchmarkId::F6 { 1.0 } else { 0.0 };
        let z: Vec<f64> = point
            .iter()
            .zip(self.shift.iter())
            .map(|(x, o)| x - o + offset)
            .collect();
        let v = self.id.base(&z) + self.bias;
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }

    /// Distance of an objective value above the optimum.
    pub fn error(&self, value: f64) -> f64 {
        value - self.bias
    }

    /// Inside the closed box, with every component finite.
    pub fn in_bounds(&self, point: &[f64]) -> bool {
        point
            .iter()
            .zip(self.lower.iter().zip(self.upper.iter()))
            .all(|(x, (lo, hi))| x.is_finite() && *x >= *lo && *x <= *hi)
    }
}

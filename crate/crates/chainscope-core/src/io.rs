//! File formats: JSON space files (dense matrix or coordinate form),
//! subset files, and model files with rationals as `"p/q"` strings.
//!
//! Coordinate input is converted to a distance matrix at load time and
//! then validated like any other matrix. Values in `[0, ∞]` serialize as
//! a number (`f64` backend) or a rational string, with `"inf"` for the
//! top element.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::model::{Direction, LatticeCount, Model1D, ModelError, Piece, Q, SubsetSpec};
use crate::scalar::Ext;
use crate::space::{MetricError, MetricSpace};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unknown file kind {0:?}")]
    UnknownKind(String),
    #[error("unknown metric {0:?} (expected euclidean, chebyshev, or manhattan)")]
    UnknownMetric(String),
    #[error("bad rational literal {0:?}")]
    BadRational(String),
    #[error("coordinate rows must be non-empty and of equal length")]
    BadCoords,
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("subset member {0} is not an index or label")]
    BadMember(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn jerr(e: impl std::fmt::Display) -> IoError {
    IoError::Json(e.to_string())
}

pub fn parse_rational(v: &Value) -> Result<Q, IoError> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<BigRational>()
            .map_err(|_| IoError::BadRational(s.clone())),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Q::from_integer(i.into()))
            } else {
                Err(IoError::BadRational(n.to_string()))
            }
        }
        other => Err(IoError::BadRational(other.to_string())),
    }
}

pub fn format_rational(q: &Q) -> String {
    q.to_string()
}

pub fn ext_f64_to_json(v: &Ext<f64>) -> Value {
    match v {
        Ext::Finite(x) => json!(x),
        Ext::Infinite => json!("inf"),
    }
}

pub fn ext_q_to_json(v: &Ext<Q>) -> Value {
    match v {
        Ext::Finite(x) => json!(format_rational(x)),
        Ext::Infinite => json!("inf"),
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SpaceFile {
    Matrix {
        labels: Option<Vec<String>>,
        dist: Vec<Vec<f64>>,
    },
    Coords {
        metric: String,
        coords: Vec<Vec<f64>>,
        labels: Option<Vec<String>>,
    },
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Parses a space file (matrix or coords form) and validates the metric.
pub fn space_from_json(text: &str) -> Result<MetricSpace<f64>, IoError> {
    let file: SpaceFile = serde_json::from_str(text).map_err(jerr)?;
    match file {
        SpaceFile::Matrix { labels, dist } => {
            let labels = labels.unwrap_or_else(|| default_labels(dist.len()));
            Ok(MetricSpace::new(labels, dist)?)
        }
        SpaceFile::Coords {
            metric,
            coords,
            labels,
        } => {
            let n = coords.len();
            let dim = coords.first().map_or(0, |r| r.len());
            if dim == 0 || coords.iter().any(|r| r.len() != dim) {
                return Err(IoError::BadCoords);
            }
            let d = |a: &[f64], b: &[f64]| -> f64 {
                match metric.as_str() {
                    "euclidean" => a
                        .iter()
                        .zip(b)
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum::<f64>()
                        .sqrt(),
                    "chebyshev" => a
                        .iter()
                        .zip(b)
                        .map(|(x, y)| (x - y).abs())
                        .fold(0.0, f64::max),
                    "manhattan" => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
                    _ => f64::NAN,
                }
            };
            if !matches!(metric.as_str(), "euclidean" | "chebyshev" | "manhattan") {
                return Err(IoError::UnknownMetric(metric));
            }
            let matrix: Vec<Vec<f64>> = coords
                .iter()
                .map(|a| coords.iter().map(|b| d(a, b)).collect())
                .collect();
            let labels = labels.unwrap_or_else(|| default_labels(n));
            Ok(MetricSpace::new(labels, matrix)?)
        }
    }
}

/// Serializes a space back to the dense-matrix file form.
pub fn space_to_json(space: &MetricSpace<f64>) -> Value {
    let n = space.len();
    let dist: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| space.dist(i, j)).collect())
        .collect();
    json!({ "kind": "matrix", "labels": space.labels(), "dist": dist })
}

/// Lossy f64 rendering of an exact sampled space, for interchange.
pub fn space_q_to_json(space: &MetricSpace<Q>) -> Value {
    let n = space.len();
    let dist: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| space.dist(i, j).to_f64().expect("rational fits f64"))
                .collect()
        })
        .collect();
    json!({ "kind": "matrix", "labels": space.labels(), "dist": dist })
}

/// Parses a finite-subset file `{"members":[indices or labels]}` against
/// a space.
pub fn members_from_json(space: &MetricSpace<f64>, text: &str) -> Result<Vec<usize>, IoError> {
    #[derive(Deserialize)]
    struct SubsetFile {
        members: Vec<Value>,
    }
    let file: SubsetFile = serde_json::from_str(text).map_err(jerr)?;
    file.members
        .iter()
        .map(|m| match m {
            Value::Number(n) => n
                .as_u64()
                .map(|i| i as usize)
                .ok_or_else(|| IoError::BadMember(m.to_string())),
            Value::String(s) => space
                .labels()
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| IoError::UnknownLabel(s.clone())),
            other => Err(IoError::BadMember(other.to_string())),
        })
        .collect()
}

fn piece_from_json(v: &Value) -> Result<Piece, IoError> {
    let ty = v
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| IoError::Json("piece without a \"type\" field".into()))?;
    match ty {
        "interval" => Ok(Piece::Interval {
            a: parse_rational(v.get("a").ok_or_else(|| jerr("interval needs a"))?)?,
            b: parse_rational(v.get("b").ok_or_else(|| jerr("interval needs b"))?)?,
        }),
        "ray" => {
            let dir = match v.get("dir").and_then(Value::as_str) {
                Some("left") => Direction::Left,
                Some("right") => Direction::Right,
                other => return Err(IoError::Json(format!("bad ray dir {other:?}"))),
            };
            Ok(Piece::Ray {
                dir,
                end: parse_rational(v.get("end").ok_or_else(|| jerr("ray needs end"))?)?,
            })
        }
        "lattice" => {
            let count = match v.get("count") {
                None => LatticeCount::Infinite,
                Some(Value::String(s)) if s == "inf" => LatticeCount::Infinite,
                Some(Value::String(s)) => LatticeCount::Finite(
                    s.parse::<u64>().map_err(|_| IoError::BadRational(s.clone()))?,
                ),
                Some(Value::Number(n)) => LatticeCount::Finite(
                    n.as_u64()
                        .ok_or_else(|| IoError::BadRational(n.to_string()))?,
                ),
                Some(other) => return Err(IoError::BadRational(other.to_string())),
            };
            Ok(Piece::Lattice {
                start: parse_rational(v.get("start").ok_or_else(|| jerr("lattice needs start"))?)?,
                step: parse_rational(v.get("step").ok_or_else(|| jerr("lattice needs step"))?)?,
                count,
            })
        }
        "points" => {
            let xs = v
                .get("xs")
                .and_then(Value::as_array)
                .ok_or_else(|| jerr("points needs xs"))?;
            Ok(Piece::Points {
                xs: xs.iter().map(parse_rational).collect::<Result<_, _>>()?,
            })
        }
        "fullline" => Ok(Piece::FullLine),
        other => Err(IoError::UnknownKind(other.to_string())),
    }
}

pub fn piece_to_json(p: &Piece) -> Value {
    match p {
        Piece::Interval { a, b } => json!({
            "type": "interval", "a": format_rational(a), "b": format_rational(b)
        }),
        Piece::Ray { dir, end } => json!({
            "type": "ray",
            "dir": match dir { Direction::Left => "left", Direction::Right => "right" },
            "end": format_rational(end),
        }),
        Piece::FullLine => json!({ "type": "fullline" }),
        Piece::Lattice { start, step, count } => json!({
            "type": "lattice",
            "start": format_rational(start),
            "step": format_rational(step),
            "count": match count {
                LatticeCount::Infinite => json!("inf"),
                LatticeCount::Finite(c) => json!(c.to_string()),
            },
        }),
        Piece::Points { xs } => json!({
            "type": "points",
            "xs": xs.iter().map(format_rational).collect::<Vec<_>>(),
        }),
    }
}

pub fn pieces_to_json(pieces: &[Piece]) -> Value {
    Value::Array(pieces.iter().map(piece_to_json).collect())
}

/// Parses a model file `{"kind":"model1d","pieces":[...]}`.
pub fn model_from_json(text: &str) -> Result<Model1D, IoError> {
    let v: Value = serde_json::from_str(text).map_err(jerr)?;
    match v.get("kind").and_then(Value::as_str) {
        Some("model1d") => {}
        other => return Err(IoError::UnknownKind(format!("{other:?}"))),
    }
    let pieces = v
        .get("pieces")
        .and_then(Value::as_array)
        .ok_or_else(|| jerr("model needs a pieces array"))?;
    let pieces = pieces
        .iter()
        .map(piece_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Model1D::new(pieces)?)
}

/// Parses a model-subset file `{"subset":[pieces]}` against its ambient.
pub fn model_subset_from_json(model: &Model1D, text: &str) -> Result<SubsetSpec, IoError> {
    let v: Value = serde_json::from_str(text).map_err(jerr)?;
    let pieces = v
        .get("subset")
        .and_then(Value::as_array)
        .ok_or_else(|| jerr("subset file needs a subset array"))?;
    let pieces = pieces
        .iter()
        .map(piece_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(model.subset(pieces)?)
}

/// Tells space files and model files apart by their `kind` field.
pub fn detect_kind(text: &str) -> Result<FileKind, IoError> {
    let v: Value = serde_json::from_str(text).map_err(jerr)?;
    match v.get("kind").and_then(Value::as_str) {
        Some("matrix") | Some("coords") => Ok(FileKind::Space),
        Some("model1d") => Ok(FileKind::Model),
        other => Err(IoError::UnknownKind(format!("{other:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Space,
    Model,
}

//! The JSON problem file (format version 1).
//!
//! ```json
//! {
//!   "version": 1,
//!   "title": "text",
//!   "scheme": {"kind": "scale", "min": 1, "max": 10},
//!   "criteria": [{"id": "c1", "label": "…", "weight": 3}],
//!   "alternatives": [{"id": "A1", "label": "…"}],
//!   "ratings": [["5", "6", "7"], ["2", "I", "5"]],
//!   "defaults": {"iMin": 0, "iMax": 1, "k": 0}
//! }
//! ```
//!
//! `ratings` is row-major with one row per criterion. Entries may be JSON
//! numbers or rating expressions. Output is deterministic: fixed key order,
//! two-space indentation, ratings in canonical form and numbers in their
//! shortest exact representation.

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::engine::EvaluationConfig;
use crate::problem::{validate_problem, Alternative, Criterion, DecisionProblem, Diagnostic, RatingScheme};
use crate::rating::{format_rating, parse_rating, RatingParseError};
use crate::value::NeutroValue;

pub const FORMAT_VERSION: u64 = 1;

const KNOWN_FIELDS: [&str; 7] =
    ["version", "title", "scheme", "criteria", "alternatives", "ratings", "defaults"];

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemDocument {
    pub title: String,
    pub problem: DecisionProblem,
    /// Evaluation settings used when the caller gives none.
    pub defaults: Option<EvaluationConfig>,
}

/// A decoded document plus non-fatal findings such as unknown fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub document: ProblemDocument,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("document must be a JSON object")]
    NotAnObject,
    #[error("unsupported format version {0} (expected 1)")]
    UnsupportedVersion(String),
    #[error("invalid document structure: {0}")]
    Structure(String),
    #[error("dimension mismatch: {}", join(.0))]
    DimensionMismatch(Vec<Diagnostic>),
    #[error("ratings[{row}][{col}]: cannot parse {token:?}: {source}")]
    InvalidRating { row: usize, col: usize, token: String, source: RatingParseError },
    #[error("invalid problem: {}", join(.0))]
    InvalidProblem(Vec<Diagnostic>),
    #[error("invalid defaults: {0}")]
    InvalidDefaults(String),
}

fn join(d: &[Diagnostic]) -> String {
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl DocumentError {
    /// One human-readable line per problem found.
    pub fn diagnostics(&self) -> Vec<String> {
        match self {
            DocumentError::DimensionMismatch(d) | DocumentError::InvalidProblem(d) => {
                d.iter().map(ToString::to_string).collect()
            }
            other => vec![other.to_string()],
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRating {
    Number(f64),
    Text(String),
}

#[derive(Deserialize)]
struct RawDocument {
    #[serde(default)]
    title: String,
    #[serde(default)]
    scheme: RatingScheme,
    criteria: Vec<RawCriterion>,
    alternatives: Vec<RawAlternative>,
    ratings: Vec<Vec<RawRating>>,
    #[serde(default)]
    defaults: Option<RawDefaults>,
}

#[derive(Deserialize)]
struct RawCriterion {
    id: String,
    #[serde(default)]
    label: String,
    weight: f64,
}

#[derive(Deserialize)]
struct RawAlternative {
    id: String,
    #[serde(default)]
    label: String,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct RawDefaults {
    i_min: Option<f64>,
    i_max: Option<f64>,
    k: Option<f64>,
}

pub fn parse_problem(text: &str) -> Result<Parsed, DocumentError> {
    let value: Value = serde_json::from_str(text).map_err(|e| DocumentError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Value::Object(map) = &value else {
        return Err(DocumentError::NotAnObject);
    };

    match map.get("version") {
        Some(v) if v.as_u64() == Some(FORMAT_VERSION) => {}
        Some(v) => return Err(DocumentError::UnsupportedVersion(v.to_string())),
        None => return Err(DocumentError::UnsupportedVersion("missing".into())),
    }

    let warnings = map
        .keys()
        .filter(|k| !KNOWN_FIELDS.contains(&k.as_str()))
        .map(|k| format!("unknown top-level field {k:?} ignored"))
        .collect();

    let raw: RawDocument =
        serde_json::from_value(value).map_err(|e| DocumentError::Structure(e.to_string()))?;

    let criteria: Vec<Criterion> =
        raw.criteria.into_iter().map(|c| Criterion { id: c.id, label: c.label, weight: c.weight }).collect();
    let alternatives: Vec<Alternative> =
        raw.alternatives.into_iter().map(|a| Alternative { id: a.id, label: a.label }).collect();

    let mut shape = Vec::new();
    if raw.ratings.len() != criteria.len() {
        shape.push(Diagnostic::RowCountMismatch { expected: criteria.len(), actual: raw.ratings.len() });
    }
    for (row, entries) in raw.ratings.iter().enumerate() {
        if entries.len() != alternatives.len() {
            shape.push(Diagnostic::RowLengthMismatch {
                row,
                expected: alternatives.len(),
                actual: entries.len(),
            });
        }
    }
    if !shape.is_empty() {
        return Err(DocumentError::DimensionMismatch(shape));
    }

    let mut ratings = Vec::with_capacity(raw.ratings.len());
    for (row, entries) in raw.ratings.into_iter().enumerate() {
        let mut parsed_row = Vec::with_capacity(entries.len());
        for (col, entry) in entries.into_iter().enumerate() {
            let v = match entry {
                RawRating::Number(x) => NeutroValue::crisp(x)
                    .map_err(|_| DocumentError::Structure(format!("ratings[{row}][{col}] is not finite")))?,
                RawRating::Text(token) => parse_rating(&token)
                    .map_err(|source| DocumentError::InvalidRating { row, col, token, source })?,
            };
            parsed_row.push(v);
        }
        ratings.push(parsed_row);
    }

    let problem = DecisionProblem { criteria, alternatives, ratings, scheme: raw.scheme };
    let diags = validate_problem(&problem);
    if !diags.is_empty() {
        return Err(DocumentError::InvalidProblem(diags));
    }

    let defaults = match raw.defaults {
        None => None,
        Some(d) => {
            let base = EvaluationConfig::default();
            let cfg = EvaluationConfig {
                i_min: d.i_min.unwrap_or(base.i_min),
                i_max: d.i_max.unwrap_or(base.i_max),
                k: d.k.unwrap_or(base.k),
            };
            cfg.check().map_err(|e| DocumentError::InvalidDefaults(e.to_string()))?;
            Some(cfg)
        }
    };

    Ok(Parsed { document: ProblemDocument { title: raw.title, problem, defaults }, warnings })
}

/// JSON number written as an integer when that is exact, else shortest round-trip float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        const EXACT_INT: f64 = 9_007_199_254_740_992.0; // 2^53
        let x = self.0;
        if x.fract() == 0.0 && x.abs() < EXACT_INT {
            s.serialize_i64(x as i64)
        } else {
            s.serialize_f64(x)
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum SchemeOut {
    Baseline,
    Scale { min: Num, max: Num },
    RankOrder,
    Unrestricted,
}

#[derive(Serialize)]
struct CriterionOut<'a> {
    id: &'a str,
    label: &'a str,
    weight: Num,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub(crate) struct ConfigOut {
    pub i_min: Num,
    pub i_max: Num,
    pub k: Num,
}

impl From<&EvaluationConfig> for ConfigOut {
    fn from(c: &EvaluationConfig) -> Self {
        ConfigOut { i_min: Num(c.i_min), i_max: Num(c.i_max), k: Num(c.k) }
    }
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    version: u64,
    title: &'a str,
    scheme: SchemeOut,
    criteria: Vec<CriterionOut<'a>>,
    alternatives: &'a [Alternative],
    ratings: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    defaults: Option<ConfigOut>,
}

pub fn serialize_problem(doc: &ProblemDocument) -> String {
    let p = &doc.problem;
    let out = DocumentOut {
        version: FORMAT_VERSION,
        title: &doc.title,
        scheme: match p.scheme {
            RatingScheme::Baseline => SchemeOut::Baseline,
            RatingScheme::Scale { min, max } => SchemeOut::Scale { min: Num(min), max: Num(max) },
            RatingScheme::RankOrder => SchemeOut::RankOrder,
            RatingScheme::Unrestricted => SchemeOut::Unrestricted,
        },
        criteria: p
            .criteria
            .iter()
            .map(|c| CriterionOut { id: &c.id, label: &c.label, weight: Num(c.weight) })
            .collect(),
        alternatives: &p.alternatives,
        ratings: p.ratings.iter().map(|row| row.iter().map(format_rating).collect()).collect(),
        defaults: doc.defaults.as_ref().map(ConfigOut::from),
    };
    let mut text = serde_json::to_string_pretty(&out).expect("document serializes");
    text.push('\n');
    text
}

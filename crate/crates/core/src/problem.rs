//! Decision problems and their validation.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::value::NeutroValue;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: String,
    pub label: String,
    /// Importance multiplier; nonnegative and finite.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alternative {
    pub id: String,
    pub label: String,
}

/// Admissible rating domain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RatingScheme {
    /// Comparison against a reference: -1 worse, 0 same, +1 better.
    Baseline,
    /// Bounded rating scale, e.g. 1..10.
    Scale { min: f64, max: f64 },
    /// Per criterion, alternatives ranked 1..m with 1 the least fit. Ties allowed.
    RankOrder,
    #[default]
    Unrestricted,
}

/// Criteria, alternatives and the rating matrix.
///
/// `ratings[i][j]` is the rating of alternative `j` on criterion `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    pub criteria: Vec<Criterion>,
    pub alternatives: Vec<Alternative>,
    pub ratings: Vec<Vec<NeutroValue>>,
    pub scheme: RatingScheme,
}

/// One violated invariant, with enough coordinates to locate it.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    NoCriteria,
    NoAlternatives,
    EmptyId { what: &'static str, index: usize },
    DuplicateId { what: &'static str, id: String },
    NegativeWeight { criterion: usize, id: String, weight: f64 },
    NonFiniteWeight { criterion: usize, id: String },
    RowCountMismatch { expected: usize, actual: usize },
    RowLengthMismatch { row: usize, expected: usize, actual: usize },
    InvalidScheme { reason: String },
    OutOfScheme { row: usize, col: usize, rating: NeutroValue, reason: String },
}

impl Diagnostic {
    pub fn is_dimension_mismatch(&self) -> bool {
        matches!(self, Diagnostic::RowCountMismatch { .. } | Diagnostic::RowLengthMismatch { .. })
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoCriteria => write!(f, "criteria: at least one criterion is required"),
            Diagnostic::NoAlternatives => {
                write!(f, "alternatives: at least one alternative is required")
            }
            Diagnostic::EmptyId { what, index } => write!(f, "{what}[{index}]: empty id"),
            Diagnostic::DuplicateId { what, id } => write!(f, "{what}: duplicate id {id:?}"),
            Diagnostic::NegativeWeight { criterion, id, weight } => {
                write!(f, "criteria[{criterion}] ({id}): negative weight {weight}")
            }
            Diagnostic::NonFiniteWeight { criterion, id } => {
                write!(f, "criteria[{criterion}] ({id}): weight is not finite")
            }
            Diagnostic::RowCountMismatch { expected, actual } => {
                write!(f, "ratings: dimension mismatch, {actual} rows for {expected} criteria")
            }
            Diagnostic::RowLengthMismatch { row, expected, actual } => {
                write!(f, "ratings[{row}]: dimension mismatch, {actual} entries for {expected} alternatives")
            }
            Diagnostic::InvalidScheme { reason } => write!(f, "scheme: {reason}"),
            Diagnostic::OutOfScheme { row, col, rating, reason } => {
                write!(f, "ratings[{row}][{col}]: {} {reason}", crate::rating::format_rating(rating))
            }
        }
    }
}

impl DecisionProblem {
    pub fn criterion_count(&self) -> usize {
        self.criteria.len()
    }

    pub fn alternative_count(&self) -> usize {
        self.alternatives.len()
    }

    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.criteria.iter().map(|c| c.weight)
    }

    /// Every diagnostic for this problem; empty iff the problem is valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        validate_problem(self)
    }
}

pub fn validate_problem(p: &DecisionProblem) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let n = p.criteria.len();
    let m = p.alternatives.len();

    if n == 0 {
        out.push(Diagnostic::NoCriteria);
    }
    if m == 0 {
        out.push(Diagnostic::NoAlternatives);
    }

    check_ids("criteria", p.criteria.iter().map(|c| c.id.as_str()), &mut out);
    check_ids("alternatives", p.alternatives.iter().map(|a| a.id.as_str()), &mut out);

    for (i, c) in p.criteria.iter().enumerate() {
        if !c.weight.is_finite() {
            out.push(Diagnostic::NonFiniteWeight { criterion: i, id: c.id.clone() });
        } else if c.weight < 0.0 {
            out.push(Diagnostic::NegativeWeight { criterion: i, id: c.id.clone(), weight: c.weight });
        }
    }

    if p.ratings.len() != n {
        out.push(Diagnostic::RowCountMismatch { expected: n, actual: p.ratings.len() });
    }
    for (row, entries) in p.ratings.iter().enumerate() {
        if entries.len() != m {
            out.push(Diagnostic::RowLengthMismatch { row, expected: m, actual: entries.len() });
        }
    }

    match scheme_domain(&p.scheme, m) {
        Err(reason) => out.push(Diagnostic::InvalidScheme { reason }),
        Ok(domain) => {
            for (row, entries) in p.ratings.iter().enumerate() {
                for (col, rating) in entries.iter().enumerate() {
                    if let Some(reason) = domain.check(rating) {
                        out.push(Diagnostic::OutOfScheme { row, col, rating: *rating, reason });
                    }
                }
            }
        }
    }

    out
}

fn check_ids<'a>(what: &'static str, ids: impl Iterator<Item = &'a str>, out: &mut Vec<Diagnostic>) {
    let mut seen = HashSet::new();
    for (index, id) in ids.enumerate() {
        if id.is_empty() {
            out.push(Diagnostic::EmptyId { what, index });
        } else if !seen.insert(id) {
            out.push(Diagnostic::DuplicateId { what, id: id.to_string() });
        }
    }
}

/// Range constraint derived from a scheme.
enum Domain {
    Any,
    /// Values in `[min, max]`, optionally restricted to integers.
    Range {
        min: f64,
        max: f64,
        integral: bool,
        label: String,
    },
}

fn scheme_domain(scheme: &RatingScheme, m: usize) -> Result<Domain, String> {
    Ok(match *scheme {
        RatingScheme::Unrestricted => Domain::Any,
        RatingScheme::Baseline => {
            Domain::Range { min: -1.0, max: 1.0, integral: true, label: "baseline {-1, 0, +1}".into() }
        }
        RatingScheme::Scale { min, max } => {
            if !min.is_finite() || !max.is_finite() {
                return Err("scale bounds must be finite".into());
            }
            if min >= max {
                return Err(format!("scale min {min} must be below max {max}"));
            }
            Domain::Range { min, max, integral: false, label: format!("scale [{min}, {max}]") }
        }
        RatingScheme::RankOrder => {
            Domain::Range { min: 1.0, max: m.max(1) as f64, integral: true, label: format!("rank 1..{m}") }
        }
    })
}

impl Domain {
    fn check(&self, v: &NeutroValue) -> Option<String> {
        let Domain::Range { min, max, integral, label } = self else {
            return None;
        };
        // the bare symbol I stands for an unknown rating and is always admissible
        if v.is_bare_indeterminate() {
            return None;
        }
        let d = v.det();
        if d < *min || d > *max || (*integral && d.fract() != 0.0) {
            return Some(format!("outside {label}"));
        }
        let spread = max - min;
        if !v.is_crisp() && v.ind().abs() > spread {
            return Some(format!("has indeterminacy coefficient wider than {label} (|c| > {spread})"));
        }
        None
    }
}

//! Scoring pipeline: `S = W × D`, de-neutrosophication, selection.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::Interval;
use crate::problem::{validate_problem, DecisionProblem, Diagnostic};
use crate::select::{self, Contention, SelectError, TIE_TOLERANCE};
use crate::value::{NeutroValue, ValueError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid problem: {}", join(.0))]
    InvalidProblem(Vec<Diagnostic>),
    #[error("indeterminate rating in classical mode at ratings[{row}][{col}]")]
    IndeterminateRating { row: usize, col: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Select(#[from] SelectError),
}

fn join(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}

/// Substitution bounds for `I` and the risk parameter `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvaluationConfig {
    pub i_min: f64,
    pub i_max: f64,
    pub k: f64,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        EvaluationConfig { i_min: 0.0, i_max: 1.0, k: 0.0 }
    }
}

impl EvaluationConfig {
    pub fn new(i_min: f64, i_max: f64, k: f64) -> Result<Self, EngineError> {
        let cfg = EvaluationConfig { i_min, i_max, k };
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<(), EngineError> {
        if !self.i_min.is_finite() || !self.i_max.is_finite() {
            return Err(EngineError::InvalidConfig("I-bounds must be finite".into()));
        }
        if self.i_min > self.i_max {
            return Err(ValueError::InvalidBounds { i_min: self.i_min, i_max: self.i_max }.into());
        }
        if !self.k.is_finite() || self.k < 0.0 {
            return Err(SelectError::InvalidK(self.k).into());
        }
        Ok(())
    }

    /// Bounds outside `[-1, 1]` are allowed but flagged.
    pub fn bounds_in_recommended_range(&self) -> bool {
        self.i_min >= -1.0 && self.i_max <= 1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationResult {
    pub neutro_scores: Vec<NeutroValue>,
    pub intervals: Vec<Interval>,
    pub selected_index: usize,
    pub ranking: Vec<usize>,
    pub contentions: Vec<Contention>,
    pub warnings: Vec<String>,
}

fn ensure_valid(p: &DecisionProblem) -> Result<(), EngineError> {
    let diags = validate_problem(p);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(EngineError::InvalidProblem(diags))
    }
}

/// Weighted column sums of the rating matrix, one per alternative.
///
/// Summation runs in criterion order so results are bit-reproducible.
pub fn score_neutro(p: &DecisionProblem) -> Result<Vec<NeutroValue>, EngineError> {
    ensure_valid(p)?;
    let mut scores = vec![NeutroValue::ZERO; p.alternative_count()];
    for (criterion, row) in p.criteria.iter().zip(&p.ratings) {
        for (score, rating) in scores.iter_mut().zip(row) {
            *score = score.checked_add(rating.checked_scale(criterion.weight)?)?;
        }
    }
    Ok(scores)
}

/// Classical Pugh scores. Every rating must be crisp.
pub fn score_classical(p: &DecisionProblem) -> Result<Vec<f64>, EngineError> {
    ensure_valid(p)?;
    for (row, entries) in p.ratings.iter().enumerate() {
        if let Some(col) = entries.iter().position(|r| !r.is_crisp()) {
            return Err(EngineError::IndeterminateRating { row, col });
        }
    }
    Ok(score_neutro(p)?.iter().map(NeutroValue::det).collect())
}

pub fn deneutrosophy(scores: &[NeutroValue], cfg: &EvaluationConfig) -> Result<Vec<Interval>, EngineError> {
    scores.iter().map(|s| s.to_interval(cfg.i_min, cfg.i_max).map_err(EngineError::from)).collect()
}

pub fn evaluate(p: &DecisionProblem, cfg: &EvaluationConfig) -> Result<EvaluationResult, EngineError> {
    cfg.check()?;
    let neutro_scores = score_neutro(p)?;
    let intervals = deneutrosophy(&neutro_scores, cfg)?;
    let selection = select::select(&intervals, cfg.k)?;

    let mut warnings = Vec::new();
    if !cfg.bounds_in_recommended_range() {
        warnings.push(format!(
            "I-bounds [{}, {}] fall outside the recommended range [-1, 1]",
            cfg.i_min, cfg.i_max
        ));
    }
    for c in &selection.contentions {
        let crisp = intervals[c.crisp_index].lo();
        let top = intervals[c.interval_index].hi();
        // admissible k for this contention: k <= max s_j - s_i
        let bound = top - crisp;
        let relation = if (cfg.k - bound).abs() <= TIE_TOLERANCE {
            "equals"
        } else if cfg.k > bound {
            "exceeds"
        } else {
            continue;
        };
        warnings.push(format!(
            "k = {} {relation} the admissible bound {bound} ({top} - {crisp}) for {} vs {}",
            cfg.k, p.alternatives[c.crisp_index].id, p.alternatives[c.interval_index].id
        ));
    }

    Ok(EvaluationResult {
        neutro_scores,
        intervals,
        selected_index: selection.selected_index,
        ranking: selection.ranking,
        contentions: selection.contentions,
        warnings,
    })
}

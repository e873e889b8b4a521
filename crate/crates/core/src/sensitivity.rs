//! Winner as a function of `k`.
//!
//! The selection only depends on `k` through comparisons `kCritical >= k`, so
//! it is piecewise constant with possible jumps just after each nonnegative
//! `kCritical`. Each piece is evaluated once at a representative `k`; nothing
//! is sampled.

use crate::engine::{deneutrosophy, score_neutro, EngineError, EvaluationConfig};
use crate::interval::Interval;
use crate::problem::DecisionProblem;
use crate::select::{contentions, select_unchecked, SelectError};

/// A maximal range of `k` with a single winner.
///
/// The range starts at `lower` (closed when `lower_inclusive`, open otherwise)
/// and ends at `upper` inclusive, or runs to infinity when `upper` is `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KSegment {
    pub lower: f64,
    pub lower_inclusive: bool,
    pub upper: Option<f64>,
    pub selected: usize,
}

impl KSegment {
    pub fn contains(&self, k: f64) -> bool {
        let above = if self.lower_inclusive { k >= self.lower } else { k > self.lower };
        above && self.upper.is_none_or(|u| k <= u)
    }

    pub fn is_point(&self) -> bool {
        self.lower_inclusive && self.upper == Some(self.lower)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KSensitivity {
    /// Ascending, covering `[0, ∞)` without gaps or overlaps.
    pub segments: Vec<KSegment>,
}

impl KSensitivity {
    /// Values of `k` after which the winner changes.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.segments.iter().filter_map(|s| s.upper).collect()
    }

    pub fn selected_at(&self, k: f64) -> Option<usize> {
        self.segments.iter().find(|s| s.contains(k)).map(|s| s.selected)
    }
}

pub fn k_sensitivity_for_intervals(intervals: &[Interval]) -> Result<KSensitivity, SelectError> {
    if intervals.is_empty() {
        return Err(SelectError::Empty);
    }
    let mut cuts: Vec<f64> =
        contentions(intervals, 0.0).iter().map(|c| c.k_critical).filter(|&kc| kc >= 0.0).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let winner = |k: f64| select_unchecked(intervals, k).selected_index;
    let mut raw = Vec::with_capacity(cuts.len() + 1);
    let mut lower = 0.0;
    let mut lower_inclusive = true;
    for &cut in &cuts {
        raw.push(KSegment { lower, lower_inclusive, upper: Some(cut), selected: winner(cut) });
        lower = cut;
        lower_inclusive = false;
    }
    // any k past the last cut behaves the same
    let beyond = if lower_inclusive { lower } else { lower * 2.0 + 1.0 };
    raw.push(KSegment { lower, lower_inclusive, upper: None, selected: winner(beyond) });

    let mut segments: Vec<KSegment> = Vec::with_capacity(raw.len());
    for seg in raw {
        match segments.last_mut() {
            Some(prev) if prev.selected == seg.selected => prev.upper = seg.upper,
            _ => segments.push(seg),
        }
    }
    Ok(KSensitivity { segments })
}

pub fn k_sensitivity(p: &DecisionProblem, i_min: f64, i_max: f64) -> Result<KSensitivity, EngineError> {
    let cfg = EvaluationConfig { i_min, i_max, k: 0.0 };
    cfg.check()?;
    let intervals = deneutrosophy(&score_neutro(p)?, &cfg)?;
    Ok(k_sensitivity_for_intervals(&intervals)?)
}

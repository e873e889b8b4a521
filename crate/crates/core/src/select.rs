//! Ranking of de-neutrosophied scores and the k-parameterized crisp-vs-interval rule.
//!
//! Scores are ordered by interval midpoint. When a crisp score `s` sits strictly
//! inside another alternative's interval `b`, the pair is a *contention*: the
//! crisp alternative goes first iff `s >= midpoint(b) + k`. The largest `k`
//! for which it still goes first is `kCritical = s - midpoint(b)`.
//!
//! Contentions can make the pairwise preference cyclic (a crisp score beaten
//! by a wide interval whose midpoint is below a third, narrow one). The ranking
//! is therefore built by repeatedly taking the alternative that beats the most
//! of those still unranked, which reproduces the plain sort whenever the
//! preference is transitive.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::interval::{Interval, IntervalRelation};

/// Absolute tolerance for treating two scores as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SelectError {
    #[error("nothing to select from: no alternatives")]
    Empty,
    #[error("k must be a finite nonnegative number, got {0}")]
    InvalidK(f64),
}

/// A crisp score lying strictly inside another alternative's interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Contention {
    pub crisp_index: usize,
    pub interval_index: usize,
    /// `midpoint + k`: the crisp score must reach this to win.
    pub threshold: f64,
    /// Largest `k` at which the crisp alternative still wins; negative means never.
    pub k_critical: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub selected_index: usize,
    /// Alternative indices, best first.
    pub ranking: Vec<usize>,
    pub contentions: Vec<Contention>,
}

/// `crisp - midpoint`, with differences inside the tie tolerance snapped to zero.
pub(crate) fn critical_k(crisp: f64, containing: &Interval) -> f64 {
    let kc = crisp - containing.midpoint();
    if kc.abs() <= TIE_TOLERANCE {
        0.0
    } else {
        kc
    }
}

fn is_contention(a: &Interval, b: &Interval) -> bool {
    a.is_point() && a.relation(b) == IntervalRelation::ContainedIn
}

/// All contentions among `intervals`, ordered by crisp index then interval index.
pub fn contentions(intervals: &[Interval], k: f64) -> Vec<Contention> {
    let mut out = Vec::new();
    for (i, a) in intervals.iter().enumerate() {
        if !a.is_point() {
            continue;
        }
        for (j, b) in intervals.iter().enumerate() {
            if i != j && is_contention(a, b) {
                out.push(Contention {
                    crisp_index: i,
                    interval_index: j,
                    threshold: b.midpoint() + k,
                    k_critical: critical_k(a.lo(), b),
                });
            }
        }
    }
    out
}

/// Midpoint descending, then higher top, then narrower, then lower index.
fn base_order(intervals: &[Interval], a: usize, b: usize) -> Ordering {
    let (x, y) = (&intervals[a], &intervals[b]);
    let by_tol = |p: f64, q: f64| {
        if (p - q).abs() <= TIE_TOLERANCE {
            Ordering::Equal
        } else {
            q.total_cmp(&p)
        }
    };
    by_tol(x.midpoint(), y.midpoint())
        .then_with(|| by_tol(x.hi(), y.hi()))
        .then_with(|| by_tol(y.width(), x.width()))
        .then_with(|| a.cmp(&b))
}

/// Whether alternative `a` is ranked ahead of `b` in a head-to-head comparison.
fn prefers(intervals: &[Interval], k: f64, a: usize, b: usize) -> bool {
    let (x, y) = (&intervals[a], &intervals[b]);
    if is_contention(x, y) {
        critical_k(x.lo(), y) >= k
    } else if is_contention(y, x) {
        critical_k(y.lo(), x) < k
    } else {
        base_order(intervals, a, b) == Ordering::Less
    }
}

pub fn select(intervals: &[Interval], k: f64) -> Result<Selection, SelectError> {
    if intervals.is_empty() {
        return Err(SelectError::Empty);
    }
    if !k.is_finite() || k < 0.0 {
        return Err(SelectError::InvalidK(k));
    }
    Ok(select_unchecked(intervals, k))
}

pub(crate) fn select_unchecked(intervals: &[Interval], k: f64) -> Selection {
    let m = intervals.len();
    let beats: Vec<Vec<bool>> =
        (0..m).map(|a| (0..m).map(|b| a != b && prefers(intervals, k, a, b)).collect()).collect();
    let mut wins: Vec<usize> = beats.iter().map(|row| row.iter().filter(|&&w| w).count()).collect();
    let mut remaining: Vec<usize> = (0..m).collect();
    let mut ranking = Vec::with_capacity(m);

    while !remaining.is_empty() {
        let (pos, &best) = remaining
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| wins[b].cmp(&wins[a]).then_with(|| base_order(intervals, a, b)))
            .expect("non-empty");
        remaining.swap_remove(pos);
        for &r in &remaining {
            if beats[r][best] {
                wins[r] -= 1;
            }
        }
        ranking.push(best);
    }

    Selection { selected_index: ranking[0], ranking, contentions: contentions(intervals, k) }
}

//! JSON and text renderings of evaluation results, shared by the CLI and the HTTP API.

use std::fmt::Write as _;

use serde::Serialize;

use crate::document::{ConfigOut, Num};
use crate::engine::{EvaluationConfig, EvaluationResult};
use crate::problem::DecisionProblem;
use crate::rating::format_rating;
use crate::sensitivity::{KSegment, KSensitivity};

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ContentionOut<'a> {
    crisp: &'a str,
    interval: &'a str,
    crisp_index: usize,
    interval_index: usize,
    threshold: Num,
    k_critical: Num,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct EvaluationOut<'a> {
    config: ConfigOut,
    alternatives: Vec<&'a str>,
    neutro_scores: Vec<String>,
    intervals: Vec<[Num; 2]>,
    ranking: Vec<&'a str>,
    ranking_indices: &'a [usize],
    selected: &'a str,
    selected_index: usize,
    contentions: Vec<ContentionOut<'a>>,
    warnings: &'a [String],
}

fn id(p: &DecisionProblem, index: usize) -> &str {
    &p.alternatives[index].id
}

/// Evaluation result keyed by alternative ids, as served at `/evaluate`.
pub fn evaluation_json(p: &DecisionProblem, cfg: &EvaluationConfig, r: &EvaluationResult) -> String {
    let out = EvaluationOut {
        config: cfg.into(),
        alternatives: p.alternatives.iter().map(|a| a.id.as_str()).collect(),
        neutro_scores: r.neutro_scores.iter().map(format_rating).collect(),
        intervals: r.intervals.iter().map(|i| [Num(i.lo()), Num(i.hi())]).collect(),
        ranking: r.ranking.iter().map(|&i| id(p, i)).collect(),
        ranking_indices: &r.ranking,
        selected: id(p, r.selected_index),
        selected_index: r.selected_index,
        contentions: r
            .contentions
            .iter()
            .map(|c| ContentionOut {
                crisp: id(p, c.crisp_index),
                interval: id(p, c.interval_index),
                crisp_index: c.crisp_index,
                interval_index: c.interval_index,
                threshold: Num(c.threshold),
                k_critical: Num(c.k_critical),
            })
            .collect(),
        warnings: &r.warnings,
    };
    let mut s = serde_json::to_string_pretty(&out).expect("report serializes");
    s.push('\n');
    s
}

pub fn evaluation_text(p: &DecisionProblem, r: &EvaluationResult) -> String {
    let mut s = String::new();
    for (j, alt) in p.alternatives.iter().enumerate() {
        let _ = writeln!(s, "{}: {} {}", alt.id, format_rating(&r.neutro_scores[j]), r.intervals[j]);
    }
    let ranking: Vec<&str> = r.ranking.iter().map(|&i| id(p, i)).collect();
    let _ = writeln!(s, "ranking: {}", ranking.join(" > "));
    let _ = writeln!(s, "selected: {}", id(p, r.selected_index));
    for c in &r.contentions {
        let _ = writeln!(
            s,
            "contention: {} ({}) inside {} {}: threshold {}, kCritical {}",
            id(p, c.crisp_index),
            r.intervals[c.crisp_index].lo(),
            id(p, c.interval_index),
            r.intervals[c.interval_index],
            c.threshold,
            c.k_critical
        );
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SegmentOut<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_from: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_above: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_to: Option<Num>,
    selected: &'a str,
}

/// Segments as a JSON list.
///
/// A single-point segment is `{"k": x}`; otherwise the lower end is `kFrom`
/// (closed) or `kAbove` (open), and `kTo` (closed) is omitted when unbounded.
pub fn sensitivity_json(p: &DecisionProblem, s: &KSensitivity) -> String {
    let out: Vec<SegmentOut> = s
        .segments
        .iter()
        .map(|seg| {
            let selected = id(p, seg.selected);
            if seg.is_point() {
                return SegmentOut {
                    k: Some(Num(seg.lower)),
                    k_from: None,
                    k_above: None,
                    k_to: None,
                    selected,
                };
            }
            SegmentOut {
                k: None,
                k_from: seg.lower_inclusive.then_some(Num(seg.lower)),
                k_above: (!seg.lower_inclusive).then_some(Num(seg.lower)),
                k_to: seg.upper.map(Num),
                selected,
            }
        })
        .collect();
    let mut text = serde_json::to_string(&out).expect("segments serialize");
    text.push('\n');
    text
}

fn segment_text(seg: &KSegment) -> String {
    if seg.is_point() {
        return format!("k={}", seg.lower);
    }
    match (seg.lower_inclusive, seg.upper) {
        (true, None) => format!("k>={}", seg.lower),
        (false, None) => format!("k>{}", seg.lower),
        (true, Some(u)) => format!("{}<=k<={u}", seg.lower),
        (false, Some(u)) => format!("{}<k<={u}", seg.lower),
    }
}

/// One line per segment, e.g. `k=0: A1` then `k>0: A3`.
pub fn sensitivity_text(p: &DecisionProblem, s: &KSensitivity) -> String {
    s.segments.iter().map(|seg| format!("{}: {}\n", segment_text(seg), id(p, seg.selected))).collect()
}

#![allow(dead_code)]

use std::path::PathBuf;

use ndmm::{Alternative, Criterion, DecisionProblem, NeutroValue, RatingScheme};
use rand::Rng;

pub fn example_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/worked_example.json")
}

pub fn example_text() -> String {
    std::fs::read_to_string(example_path()).unwrap()
}

pub fn nv(d: f64, c: f64) -> NeutroValue {
    NeutroValue::new(d, c).unwrap()
}

fn ids(prefix: &str, count: usize) -> Vec<String> {
    (0..count).map(|i| format!("{prefix}{}", i + 1)).collect()
}

/// Random problem with the given rating generator, unrestricted scheme.
pub fn random_problem<R: Rng>(
    rng: &mut R,
    n_range: std::ops::RangeInclusive<usize>,
    m_range: std::ops::RangeInclusive<usize>,
    weight_max: f64,
    mut rating: impl FnMut(&mut R) -> NeutroValue,
) -> DecisionProblem {
    let n = rng.random_range(n_range);
    let m = rng.random_range(m_range);
    let criteria = ids("c", n)
        .into_iter()
        .map(|id| Criterion {
            label: format!("criterion {id}"),
            id,
            weight: rng.random_range(0.0..=weight_max),
        })
        .collect();
    let alternatives =
        ids("A", m).into_iter().map(|id| Alternative { label: format!("alternative {id}"), id }).collect();
    let ratings = (0..n).map(|_| (0..m).map(|_| rating(rng)).collect()).collect();
    DecisionProblem { criteria, alternatives, ratings, scheme: RatingScheme::Unrestricted }
}

pub fn crisp_rating<R: Rng>(rng: &mut R) -> NeutroValue {
    nv(rng.random_range(-10.0..=10.0), 0.0)
}

/// Mostly crisp, sometimes bare `I`, sometimes `d + cI` with `c ∈ [-3, 3]`.
pub fn mixed_rating<R: Rng>(rng: &mut R) -> NeutroValue {
    match rng.random_range(0..4) {
        0 => NeutroValue::I,
        1 => nv(rng.random_range(-10.0..=10.0), rng.random_range(-3.0..=3.0)),
        _ => crisp_rating(rng),
    }
}

pub fn random_bounds<R: Rng>(rng: &mut R) -> (f64, f64) {
    let a: f64 = rng.random_range(-1.0..=1.0);
    let b: f64 = rng.random_range(-1.0..=1.0);
    (a.min(b), a.max(b))
}

//! Engine invariants over seeded random problems.

mod common;

use common::*;
use ndmm::{evaluate, score_classical, score_neutro, EvaluationConfig, NeutroValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn permuting_alternatives_permutes_results() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let p = random_problem(&mut rng, 1..=6, 1..=8, 10.0, mixed_rating);
        let (i_min, i_max) = random_bounds(&mut rng);
        let cfg = EvaluationConfig { i_min, i_max, k: rng.random_range(0.0..2.0) };
        let m = p.alternative_count();

        // Fisher-Yates with the test rng
        let mut perm: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let mut q = p.clone();
        q.alternatives = perm.iter().map(|&j| p.alternatives[j].clone()).collect();
        q.ratings = p.ratings.iter().map(|row| perm.iter().map(|&j| row[j]).collect()).collect();

        let a = evaluate(&p, &cfg).unwrap();
        let b = evaluate(&q, &cfg).unwrap();
        for (new, &old) in perm.iter().enumerate() {
            assert_eq!(b.neutro_scores[new], a.neutro_scores[old]);
            assert_eq!(b.intervals[new], a.intervals[old]);
        }
        // alternatives with identical intervals may swap places (index tie-break)
        let ranked = |r: &ndmm::EvaluationResult| -> Vec<ndmm::Interval> {
            r.ranking.iter().map(|&i| r.intervals[i]).collect()
        };
        assert_eq!(ranked(&a), ranked(&b));
        let tied = a.intervals.iter().filter(|iv| **iv == a.intervals[a.selected_index]).count();
        if tied == 1 {
            assert_eq!(p.alternatives[a.selected_index].id, q.alternatives[b.selected_index].id);
        }
    }
}

#[test]
fn raising_a_rating_never_lowers_its_midpoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let p = random_problem(&mut rng, 1..=6, 1..=6, 10.0, mixed_rating);
        let (i_min, i_max) = random_bounds(&mut rng);
        let cfg = EvaluationConfig { i_min, i_max, k: 0.0 };
        let i = rng.random_range(0..p.criterion_count());
        let j = rng.random_range(0..p.alternative_count());
        let mut q = p.clone();
        let r = q.ratings[i][j];
        q.ratings[i][j] = NeutroValue::new(r.det() + rng.random_range(0.0..5.0), r.ind()).unwrap();
        let before = evaluate(&p, &cfg).unwrap().intervals[j].midpoint();
        let after = evaluate(&q, &cfg).unwrap().intervals[j].midpoint();
        assert!(after >= before - 1e-9, "{before} -> {after}");
    }
}

#[test]
fn crisp_problems_match_classical_scores() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let p = random_problem(&mut rng, 1..=10, 1..=10, 10.0, crisp_rating);
        let classical = score_classical(&p).unwrap();
        let neutro = score_neutro(&p).unwrap();
        for (c, n) in classical.iter().zip(&neutro) {
            assert_eq!(*c, n.det());
            assert!(n.is_crisp());
        }
    }
}

#[test]
fn an_interval_above_all_others_is_always_selected() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let mut p = random_problem(&mut rng, 1..=5, 1..=6, 10.0, mixed_rating);
        // make the last alternative dominate: every rating far above the rest
        let last = p.alternative_count() - 1;
        for (row, c) in p.ratings.iter_mut().zip(&mut p.criteria) {
            c.weight = c.weight.max(0.5);
            row[last] = nv(1000.0, rng.random_range(-3.0..3.0));
        }
        let (i_min, i_max) = random_bounds(&mut rng);
        let r0 = evaluate(&p, &EvaluationConfig { i_min, i_max, k: 0.0 }).unwrap();
        let top = r0.intervals[last];
        assert!(r0.intervals.iter().enumerate().all(|(j, iv)| j == last || top.lo() > iv.hi()));
        for k in [0.0, 0.5, 3.0, 1e6] {
            let r = evaluate(&p, &EvaluationConfig { i_min, i_max, k }).unwrap();
            assert_eq!(r.selected_index, last);
        }
    }
}

#[test]
fn crisp_wins_for_a_prefix_of_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    for _ in 0..1500 {
        let p = random_problem(&mut rng, 1..=3, 2..=2, 10.0, mixed_rating);
        let base = evaluate(&p, &EvaluationConfig::default()).unwrap();
        for c in &base.contentions {
            let ks: Vec<f64> = (0..60).map(|s| s as f64 * 0.25).collect();
            let wins: Vec<bool> = ks
                .iter()
                .map(|&k| {
                    let r = evaluate(&p, &EvaluationConfig { k, ..Default::default() }).unwrap();
                    let pos = |i| r.ranking.iter().position(|&x| x == i).unwrap();
                    pos(c.crisp_index) < pos(c.interval_index)
                })
                .collect();
            // once lost, never regained
            let first_loss = wins.iter().position(|w| !w).unwrap_or(wins.len());
            assert!(wins[first_loss..].iter().all(|w| !w));
            checked += 1;
        }
    }
    assert!(checked > 10, "only {checked} contentions generated");
}

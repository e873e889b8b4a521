//! Acceptance criteria for the engine, file formats, CLI and HTTP API.
//!
//! Every criterion prints one `PASS` or `FAIL` line to stderr.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use ndmm::service::{router, ProblemStore};
use ndmm::{
    evaluate, format_rating, k_sensitivity, parse_problem, parse_rating, serialize_problem, validate_problem,
    Alternative, Criterion, DecisionProblem, EvaluationConfig, Interval, NeutroValue, ProblemDocument,
    RatingScheme,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tower::ServiceExt;

use common::*;

/// Runs one criterion, prints its verdict line, then fails the test if needed.
fn criterion(n: u32, title: &str, body: impl FnOnce() -> Result<String, String>) {
    let outcome = catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
    // straight to the handle so the verdict shows without --nocapture
    let line = match &outcome {
        Ok(detail) => format!("AC{n} PASS  {title}: {detail}\n"),
        Err(why) => format!("AC{n} FAIL  {title}: {why}\n"),
    };
    let _ = std::io::stderr().write_all(line.as_bytes());
    if let Err(why) = outcome {
        panic!("AC{n} failed: {why}");
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($msg)+));
        }
    };
}

fn load_example() -> ProblemDocument {
    parse_problem(&example_text()).unwrap().document
}

fn ids(p: &DecisionProblem, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&j| p.alternatives[j].id.clone()).collect()
}

#[test]
fn ac1_worked_example_is_reproduced_exactly() {
    criterion(1, "worked example scores and intervals", || {
        let start = Instant::now();
        let text = std::fs::read_to_string(example_path()).map_err(|e| e.to_string())?;
        let doc = parse_problem(&text).map_err(|e| e.to_string())?.document;
        let r = evaluate(&doc.problem, &EvaluationConfig::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();

        let p = &doc.problem;
        ensure!(p.criteria.iter().map(|c| c.weight).collect::<Vec<_>>() == [3.0, 3.0, 2.0, 1.0], "weights");
        ensure!(p.scheme == RatingScheme::Scale { min: 1.0, max: 10.0 }, "scheme {:?}", p.scheme);

        let want_scores =
            [NeutroValue::new(44.0, 0.0), NeutroValue::new(28.0, 3.0), NeutroValue::new(43.0, 2.0)]
                .map(Result::unwrap);
        ensure!(r.neutro_scores == want_scores, "scores {:?}", r.neutro_scores);
        let shown: Vec<String> = r.neutro_scores.iter().map(format_rating).collect();
        ensure!(shown == ["44", "28+3I", "43+2I"], "formatted scores {shown:?}");

        let want_intervals = [(44.0, 44.0), (28.0, 31.0), (43.0, 45.0)];
        for (iv, (lo, hi)) in r.intervals.iter().zip(want_intervals) {
            // zero tolerance
            ensure!(iv.lo() == lo && iv.hi() == hi, "interval {iv}, want [{lo},{hi}]");
        }
        ensure!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
        Ok(format!("44, 28+3I, 43+2I -> [44,44] [28,31] [43,45] in {elapsed:?}"))
    });
}

#[test]
fn ac2_selection_flips_just_above_zero() {
    criterion(2, "selection flip at k = 0", || {
        let doc = load_example();
        let p = &doc.problem;
        let selected = |k: f64| -> Result<String, String> {
            let r = evaluate(p, &EvaluationConfig { k, ..Default::default() }).map_err(|e| e.to_string())?;
            Ok(p.alternatives[r.selected_index].id.clone())
        };
        ensure!(selected(0.0)? == "A1", "k=0 selects {}", selected(0.0)?);
        for k in [0.001, 0.5, 1.0] {
            ensure!(selected(k)? == "A3", "k={k} selects {}", selected(k)?);
        }
        let s = k_sensitivity(p, 0.0, 1.0).map_err(|e| e.to_string())?;
        ensure!(s.breakpoints() == [0.0], "breakpoints {:?}", s.breakpoints());
        ensure!(
            s.selected_at(0.0) == Some(0) && s.selected_at(1e-12) == Some(2),
            "segments {:?}",
            s.segments
        );
        Ok("A1 at k=0, A3 at 0.001/0.5/1, single breakpoint 0".into())
    });
}

#[test]
fn ac3_crisp_problems_degenerate_to_classical() {
    criterion(3, "crisp problems match the classical matrix", || {
        let mut rng = ChaCha8Rng::seed_from_u64(301);
        let start = Instant::now();
        for case in 0..1000 {
            let p = random_problem(&mut rng, 1..=10, 1..=10, 10.0, crisp_rating);
            let r = evaluate(&p, &EvaluationConfig::default()).map_err(|e| e.to_string())?;

            // oracle: plain weighted sums, sorted descending, ties by position
            let classical: Vec<f64> = (0..p.alternative_count())
                .map(|j| p.criteria.iter().zip(&p.ratings).map(|(c, row)| c.weight * row[j].det()).sum())
                .collect();
            let mut order: Vec<usize> = (0..classical.len()).collect();
            order.sort_by(|&a, &b| classical[b].total_cmp(&classical[a]));

            for (j, iv) in r.intervals.iter().enumerate() {
                ensure!(iv.is_point(), "case {case}: interval {iv} is not a point");
                ensure!((iv.lo() - classical[j]).abs() <= 1e-9, "case {case}: {iv} vs {}", classical[j]);
            }
            ensure!(r.ranking == order, "case {case}: ranking {:?} vs {order:?}", r.ranking);
            ensure!(r.selected_index == order[0], "case {case}: selected {}", r.selected_index);
        }
        let elapsed = start.elapsed();
        ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
        Ok(format!("1000 problems in {elapsed:?}"))
    });
}

#[test]
fn ac4_intervals_match_grid_oracle() {
    criterion(4, "intervals equal the 101-point grid extremes", || {
        let mut rng = ChaCha8Rng::seed_from_u64(401);
        let mut worst: f64 = 0.0;
        for case in 0..500 {
            let p = random_problem(&mut rng, 1..=10, 1..=10, 10.0, mixed_rating);
            let (i_min, i_max) = random_bounds(&mut rng);
            let r = evaluate(&p, &EvaluationConfig { i_min, i_max, k: 0.0 }).map_err(|e| e.to_string())?;
            for j in 0..p.alternative_count() {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for t in 0..=100 {
                    let i = if t == 100 { i_max } else { i_min + (i_max - i_min) * t as f64 / 100.0 };
                    let s: f64 = p
                        .criteria
                        .iter()
                        .zip(&p.ratings)
                        .map(|(c, row)| c.weight * (row[j].det() + row[j].ind() * i))
                        .sum();
                    lo = lo.min(s);
                    hi = hi.max(s);
                }
                let iv = r.intervals[j];
                let err = (iv.lo() - lo).abs().max((iv.hi() - hi).abs());
                worst = worst.max(err);
                ensure!(err <= 1e-9, "case {case}, alternative {j}: {iv} vs grid [{lo},{hi}]");
            }
        }
        Ok(format!("500 problems, max deviation {worst:e}"))
    });
}

#[test]
fn ac5_weight_scaling_keeps_the_decision() {
    criterion(5, "weight scaling leaves selection and ranking unchanged", || {
        let mut rng = ChaCha8Rng::seed_from_u64(501);
        for case in 0..500 {
            let p = random_problem(&mut rng, 1..=8, 1..=8, 10.0, mixed_rating);
            let (i_min, i_max) = random_bounds(&mut rng);
            let k = rng.random_range(0.0..2.0);
            let base0 = evaluate(&p, &EvaluationConfig { i_min, i_max, k: 0.0 }).unwrap();
            let base_k = evaluate(&p, &EvaluationConfig { i_min, i_max, k }).unwrap();
            for lambda in [0.5, 2.0, 10.0] {
                let mut q = p.clone();
                q.criteria.iter_mut().for_each(|c| c.weight *= lambda);
                let r = evaluate(&q, &EvaluationConfig { i_min, i_max, k: 0.0 }).unwrap();
                ensure!(
                    r.selected_index == base0.selected_index && r.ranking == base0.ranking,
                    "case {case}, lambda {lambda}: {:?} vs {:?}",
                    r.ranking,
                    base0.ranking
                );
                // k is in score units, so it scales with the weights
                let r = evaluate(&q, &EvaluationConfig { i_min, i_max, k: k * lambda }).unwrap();
                ensure!(
                    r.selected_index == base_k.selected_index && r.ranking == base_k.ranking,
                    "case {case}, lambda {lambda}, k {k}: {:?} vs {:?}",
                    r.ranking,
                    base_k.ranking
                );
            }
        }
        Ok("500 problems x lambda in {0.5, 2, 10}, k = 0 and k scaled with lambda".into())
    });
}

fn random_value<R: Rng>(rng: &mut R) -> f64 {
    match rng.random_range(0..6) {
        0 => 0.0,
        1 => rng.random_range(-20i32..=20) as f64,
        2 => rng.random_range(-1.0..1.0),
        3 => rng.random_range(-1000.0..1000.0),
        4 => {
            let m: f64 = rng.random_range(1.0..10.0);
            let sign = if rng.random_bool(0.5) { -1.0 } else { 1.0 };
            sign * m * 10f64.powi(rng.random_range(-300..=300))
        }
        _ => f64::from_bits(rng.random::<u64>() >> 2) * if rng.random_bool(0.5) { 1.0 } else { -1.0 },
    }
}

fn random_neutro<R: Rng>(rng: &mut R) -> NeutroValue {
    loop {
        if let Ok(v) = NeutroValue::new(random_value(rng), random_value(rng)) {
            return v;
        }
    }
}

fn random_text<R: Rng>(rng: &mut R) -> String {
    const POOL: &[&str] = &["a", "Z", " ", "\"", "\\", "\n", "\t", "é", "∞", "🙂", "{", "}", "0", "I", "/"];
    let len = rng.random_range(0..12);
    (0..len).map(|_| POOL[rng.random_range(0..POOL.len())]).collect()
}

/// A valid rating for the scheme, including bare and mixed indeterminate entries.
fn scheme_rating<R: Rng>(rng: &mut R, scheme: &RatingScheme, m: usize) -> NeutroValue {
    let (lo, hi, integral) = match *scheme {
        RatingScheme::Baseline => (-1.0, 1.0, true),
        RatingScheme::Scale { min, max } => (min, max, false),
        RatingScheme::RankOrder => (1.0, m as f64, true),
        RatingScheme::Unrestricted => (-50.0, 50.0, false),
    };
    let det =
        if integral { rng.random_range(lo as i64..=hi as i64) as f64 } else { rng.random_range(lo..=hi) };
    match rng.random_range(0..5) {
        0 => NeutroValue::I,
        1 => NeutroValue::new(0.0, -1.0).unwrap(),
        2 => {
            let span = hi - lo;
            NeutroValue::new(det, rng.random_range(-span..=span)).unwrap()
        }
        _ => NeutroValue::crisp(det).unwrap(),
    }
}

fn random_document<R: Rng>(rng: &mut R) -> ProblemDocument {
    let n = rng.random_range(1..=6);
    let m = rng.random_range(1..=6);
    let scheme = match rng.random_range(0..4) {
        0 => RatingScheme::Baseline,
        1 => {
            let min = rng.random_range(-5i32..=5) as f64;
            let max = min + rng.random_range(1.0..20.0);
            RatingScheme::Scale { min, max }
        }
        2 => RatingScheme::RankOrder,
        _ => RatingScheme::Unrestricted,
    };
    let criteria = (0..n)
        .map(|i| Criterion {
            id: format!("c{i}-{}", random_text(rng).replace(char::is_whitespace, "_")),
            label: random_text(rng),
            weight: if rng.random_bool(0.5) {
                rng.random_range(0u32..10) as f64
            } else {
                rng.random_range(0.0..10.0)
            },
        })
        .collect();
    let alternatives = (0..m).map(|j| Alternative { id: format!("A{j}"), label: random_text(rng) }).collect();
    let ratings = (0..n).map(|_| (0..m).map(|_| scheme_rating(rng, &scheme, m)).collect()).collect();
    let defaults = rng.random_bool(0.5).then(|| {
        let (i_min, i_max) = random_bounds(rng);
        EvaluationConfig { i_min, i_max, k: rng.random_range(0.0..3.0) }
    });
    ProblemDocument {
        title: random_text(rng),
        problem: DecisionProblem { criteria, alternatives, ratings, scheme },
        defaults,
    }
}

fn random_bytes<R: Rng>(rng: &mut R) -> Vec<u8> {
    const GRAMMAR: &[u8] = b"0123456789+-.eEIi \t()*x";
    let len = rng.random_range(0..24);
    if rng.random_bool(0.5) {
        (0..len).map(|_| rng.random::<u8>()).collect()
    } else {
        (0..len).map(|_| GRAMMAR[rng.random_range(0..GRAMMAR.len())]).collect()
    }
}

#[test]
fn ac6_io_round_trips() {
    criterion(6, "document and rating round-trips, rating fuzzing", || {
        let mut rng = ChaCha8Rng::seed_from_u64(601);
        for case in 0..200 {
            let doc = random_document(&mut rng);
            let diags = validate_problem(&doc.problem);
            ensure!(diags.is_empty(), "case {case}: generator produced invalid problem: {diags:?}");
            let text = serialize_problem(&doc);
            let back = parse_problem(&text).map_err(|e| format!("case {case}: {e}\n{text}"))?;
            ensure!(back.document == doc, "case {case}: document changed\n{text}");
            ensure!(back.warnings.is_empty(), "case {case}: warnings {:?}", back.warnings);
            ensure!(serialize_problem(&back.document) == text, "case {case}: serialization not stable");
        }

        for case in 0..1000 {
            let v = random_neutro(&mut rng);
            let text = format_rating(&v);
            let back = parse_rating(&text).map_err(|e| format!("case {case}: {text:?}: {e}"))?;
            ensure!(back == v, "case {case}: {v:?} -> {text:?} -> {back:?}");
        }

        let mut accepted = 0;
        for case in 0..10_000 {
            let bytes = random_bytes(&mut rng);
            let input = String::from_utf8_lossy(&bytes).into_owned();
            let outcome = catch_unwind(|| parse_rating(&input));
            let Ok(result) = outcome else {
                return Err(format!("case {case}: parse_rating panicked on {input:?}"));
            };
            if let Ok(v) = result {
                accepted += 1;
                ensure!(parse_rating(&format_rating(&v)) == Ok(v), "case {case}: {input:?} not canonical");
            }
        }
        Ok(format!("200 documents, 1000 ratings, 10000 fuzz inputs ({accepted} accepted) without panics"))
    });
}

fn ndmm(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ndmm")).args(args).output().unwrap()
}

#[test]
fn ac7_cli_end_to_end() {
    criterion(7, "CLI evaluate json and plot", || {
        let example = example_path();
        let example = example.to_str().unwrap();
        let o = ndmm(&["evaluate", example, "--format", "json"]);
        ensure!(o.status.success(), "evaluate exit {:?}", o.status.code());
        let v: Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
        ensure!(v["neutroScores"] == json!(["44", "28+3I", "43+2I"]), "scores {}", v["neutroScores"]);
        ensure!(v["intervals"] == json!([[44, 44], [28, 31], [43, 45]]), "intervals {}", v["intervals"]);
        ensure!(v["selected"] == "A1", "selected {}", v["selected"]);

        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let mut svgs = Vec::new();
        for name in ["first.svg", "second.svg"] {
            let out = dir.path().join(name);
            let o = ndmm(&["plot", example, "--out", out.to_str().unwrap()]);
            ensure!(o.status.success(), "plot exit {:?}", o.status.code());
            svgs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        ensure!(svgs[0] == svgs[1], "plot output differs between runs");
        let svg = String::from_utf8(svgs.swap_remove(0)).map_err(|e| e.to_string())?;
        let bands = svg.matches("class=\"score-band\"").count();
        let lines = svg.matches("class=\"score-line\"").count();
        ensure!(bands == 2 && lines == 1, "{bands} bands, {lines} lines");
        ensure!(svg.matches("<rect").count() == 2 && svg.matches("<line").count() == 1, "extra shapes");
        Ok("json matches the worked example; 2 bands + 1 line, byte-identical".into())
    });
}

async fn request(app: &Router, method: Method, uri: &str, body: &str) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).body(Body::from(body.to_owned())).unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

async fn api_contract() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (store, _) = ProblemStore::open(dir.path()).map_err(|e| e.to_string())?;
    let app = router(Arc::new(store), None);

    let (status, created) = request(&app, Method::POST, "/api/problems", &example_text()).await;
    ensure!(status == StatusCode::CREATED, "create: {status}");
    let id = created["id"].as_str().ok_or("no id")?.to_owned();

    for (k, want) in [("0", "A1"), ("0.5", "A3")] {
        let (status, v) = request(&app, Method::GET, &format!("/api/problems/{id}/evaluate?k={k}"), "").await;
        ensure!(status == StatusCode::OK && v["selected"] == want, "k={k}: {status} {}", v["selected"]);
    }

    let short = example_text().replace(r#"["3", "2", "7"]"#, r#"["3", "2"]"#);
    for bad in ["", "{", "[]", short.as_str()] {
        let (status, v) = request(&app, Method::POST, "/api/problems", bad).await;
        let diags = v["diagnostics"].as_array().map_or(0, Vec::len);
        ensure!(
            status == StatusCode::BAD_REQUEST && diags > 0,
            "body {bad:.20?}: {status}, {diags} diagnostics"
        );
    }

    for uri in ["/api/problems/nope", "/api/problems/nope/evaluate", "/api/problems/nope/sensitivity"] {
        let (status, _) = request(&app, Method::GET, uri, "").await;
        ensure!(status == StatusCode::NOT_FOUND, "{uri}: {status}");
    }

    drop(app);
    let (store, skipped) = ProblemStore::open(dir.path()).map_err(|e| e.to_string())?;
    ensure!(skipped.is_empty(), "skipped {skipped:?}");
    let app = router(Arc::new(store), None);
    let (status, v) = request(&app, Method::GET, &format!("/api/problems/{id}/evaluate"), "").await;
    ensure!(status == StatusCode::OK && v["selected"] == "A1", "after restart: {status} {v}");
    let (_, list) = request(&app, Method::GET, "/api/problems", "").await;
    ensure!(list.as_array().map_or(0, Vec::len) == 1, "after restart: {list}");
    Ok("create/evaluate, 400 with diagnostics, 404, persistence across restart".into())
}

#[test]
fn ac8_api_contract() {
    criterion(8, "HTTP API contract", || {
        let runtime = tokio::runtime::Builder::new_current_thread().enable_all().build().unwrap();
        runtime.block_on(api_contract())
    });
}

// hand-checked ranking of the worked example
#[test]
fn worked_example_ids_in_ranking_order() {
    let doc = load_example();
    let r = evaluate(&doc.problem, &EvaluationConfig::default()).unwrap();
    assert_eq!(ids(&doc.problem, &r.ranking), ["A1", "A3", "A2"]);
    assert_eq!(r.intervals[1], Interval::new(28.0, 31.0).unwrap());
}

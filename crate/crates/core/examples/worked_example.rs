//! Scores, intervals and the selected alternative for the bundled example,
//! for a few values of the risk parameter `k`.
//!
//! cargo run --example worked_example

use ndmm::{evaluate, format_rating, parse_problem, EvaluationConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse_problem(include_str!("data/worked_example.json"))?.document;
    let p = &doc.problem;
    println!("{}", doc.title);

    let result = evaluate(p, &EvaluationConfig::default())?;
    for (j, alt) in p.alternatives.iter().enumerate() {
        println!("  {:<3} {:<6} {}", alt.id, format_rating(&result.neutro_scores[j]), result.intervals[j]);
    }

    for k in [0.0, 0.001, 0.5, 1.0] {
        let r = evaluate(p, &EvaluationConfig { k, ..Default::default() })?;
        let ranking: Vec<&str> = r.ranking.iter().map(|&j| p.alternatives[j].id.as_str()).collect();
        println!(
            "k = {k:<5} selected {}  ranking {}",
            p.alternatives[r.selected_index].id,
            ranking.join(" > ")
        );
        for w in &r.warnings {
            println!("          warning: {w}");
        }
    }
    Ok(())
}

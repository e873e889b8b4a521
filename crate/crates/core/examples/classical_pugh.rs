//! A classical Pugh matrix: each concept is compared against a datum with
//! -1 / 0 / +1, one entry is left undecided as `I`.
//!
//! cargo run --example classical_pugh

use ndmm::{
    evaluate, format_rating, parse_rating, score_classical, Alternative, Criterion, DecisionProblem,
    EvaluationConfig, RatingScheme,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let criteria = [("cost", 3.0), ("mass", 2.0), ("reliability", 5.0), ("assembly", 1.0)];
    let concepts = ["clamp", "latch", "magnet"];
    let table = [["+1", "0", "-1"], ["0", "+1", "+1"], ["+1", "-1", "I"], ["-1", "+1", "0"]];

    let mut p = DecisionProblem {
        criteria: criteria
            .iter()
            .map(|&(id, weight)| Criterion { id: id.into(), label: String::new(), weight })
            .collect(),
        alternatives: concepts
            .iter()
            .map(|&id| Alternative { id: id.into(), label: String::new() })
            .collect(),
        ratings: Vec::new(),
        scheme: RatingScheme::Baseline,
    };
    for row in table {
        p.ratings.push(row.iter().map(|t| parse_rating(t)).collect::<Result<_, _>>()?);
    }

    // the undecided entry blocks the classical method
    match score_classical(&p) {
        Ok(s) => println!("classical scores: {s:?}"),
        Err(e) => println!("classical: {e}"),
    }

    // interpreting I as anything from "worse" to "better"
    let cfg = EvaluationConfig::new(-1.0, 1.0, 0.0)?;
    let r = evaluate(&p, &cfg)?;
    for (j, c) in concepts.iter().enumerate() {
        println!("{c:<7} {:<6} {}", format_rating(&r.neutro_scores[j]), r.intervals[j]);
    }
    println!("selected: {}", concepts[r.selected_index]);

    // once decided, the classical method agrees with the interval view
    p.ratings[2][2] = parse_rating("+1")?;
    println!("with magnet reliability = +1: {:?}", score_classical(&p)?);
    Ok(())
}

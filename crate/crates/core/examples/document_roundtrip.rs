//! Reading, editing and writing problem documents.
//!
//! cargo run --example document_roundtrip

use ndmm::{parse_problem, parse_rating, serialize_problem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = include_str!("data/worked_example.json");
    let mut doc = parse_problem(text)?.document;

    doc.problem.ratings[1][1] = parse_rating("5")?;
    doc.title.push_str(" (A2 decided)");
    let out = serialize_problem(&doc);
    print!("{out}");
    assert_eq!(parse_problem(&out)?.document, doc);

    // unknown fields are kept out of the model but reported
    let extra = text.replacen('{', "{\n  \"author\": \"someone\",", 1);
    for w in parse_problem(&extra)?.warnings {
        println!("warning: {w}");
    }

    // every problem is reported at once
    let broken = text.replace("\"weight\": 2", "\"weight\": -2").replace("\"7\"]", "\"70\"]");
    if let Err(e) = parse_problem(&broken) {
        for d in e.diagnostics() {
            println!("error: {d}");
        }
    }
    Ok(())
}

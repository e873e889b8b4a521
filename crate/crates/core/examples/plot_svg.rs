//! Writes both chart styles for the bundled example.
//!
//! cargo run --example plot_svg -- [out-dir]

use ndmm::plot::{render, PlotData, PlotMode, PlotSpec};
use ndmm::{evaluate, parse_problem, EvaluationConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::args().nth(1).unwrap_or_else(|| ".".into());
    let doc = parse_problem(include_str!("data/worked_example.json"))?.document;
    let cfg = EvaluationConfig { k: 0.5, ..Default::default() };
    let r = evaluate(&doc.problem, &cfg)?;
    let data = PlotData {
        title: &doc.title,
        ids: doc.problem.alternatives.iter().map(|a| a.id.as_str()).collect(),
        scores: &r.neutro_scores,
        intervals: &r.intervals,
        selected: Some(r.selected_index),
        i_min: cfg.i_min,
        i_max: cfg.i_max,
    };
    for (mode, name) in [(PlotMode::Bands, "bands.svg"), (PlotMode::Lines, "lines.svg")] {
        let path = std::path::Path::new(&out_dir).join(name);
        std::fs::write(&path, render(&data, &PlotSpec::default(), mode))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

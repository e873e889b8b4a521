//! How the winner depends on the risk parameter `k`, computed exactly from
//! the contention thresholds rather than by sampling.
//!
//! cargo run --example k_sensitivity

use ndmm::sensitivity::k_sensitivity_for_intervals;
use ndmm::{k_sensitivity, parse_problem, Interval};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse_problem(include_str!("data/worked_example.json"))?.document;
    let p = &doc.problem;
    for (i_min, i_max) in [(0.0, 1.0), (-1.0, 1.0)] {
        println!("I in [{i_min}, {i_max}]");
        let s = k_sensitivity(p, i_min, i_max)?;
        print!("{}", ndmm::report::sensitivity_text(p, &s));
    }

    // a crisp 46 inside [40, 50]: it keeps winning up to k = 1
    let ivs = [Interval::point(46.0)?, Interval::new(40.0, 50.0)?, Interval::new(30.0, 35.0)?];
    let s = k_sensitivity_for_intervals(&ivs)?;
    println!("synthetic: breakpoints {:?}", s.breakpoints());
    for seg in &s.segments {
        let open = if seg.lower_inclusive { '[' } else { '(' };
        match seg.upper {
            Some(u) => println!("  k in {open}{}, {u}] -> #{}", seg.lower, seg.selected),
            None => println!("  k in {open}{}, inf) -> #{}", seg.lower, seg.selected),
        }
    }
    Ok(())
}

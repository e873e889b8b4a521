//! Parsing and formatting rating expressions.
//!
//! cargo run --example rating_expressions

use ndmm::{format_rating, parse_rating};

fn main() {
    for token in ["7", "I", "-I", "2.5-0.5I", " 3 + 2I ", "1e2+I", "0.1I", "4+", "I I", "2+-3", "", "abc"] {
        let shown = format!("{token:?}");
        match parse_rating(token) {
            Ok(v) => {
                let at = |i: f64| v.eval(i);
                println!(
                    "{shown:>12} -> {:<10} det {} ind {}  at I=0: {}  at I=1: {}",
                    format_rating(&v),
                    v.det(),
                    v.ind(),
                    at(0.0),
                    at(1.0)
                );
            }
            Err(e) => println!("{shown:>12} -> error: {e}"),
        }
    }
}

//! Decision Matrix Method (Pugh matrix) with indeterminate ratings.
//!
//! Ratings are numbers or expressions in the indeterminacy symbol `I`
//! (`7`, `I`, `2.5-0.5I`). Weighted column sums give scores `d + c·I`; replacing
//! `I` by its bounds turns each score into an interval; a rule with risk
//! parameter `k` decides between a crisp score and an interval containing it.
//!
//! ```
//! use ndmm::{evaluate, parse_problem, EvaluationConfig};
//!
//! let text = include_str!("../examples/data/worked_example.json");
//! let doc = parse_problem(text).unwrap().document;
//! let result = evaluate(&doc.problem, &EvaluationConfig::default()).unwrap();
//! assert_eq!(doc.problem.alternatives[result.selected_index].id, "A1");
//!
//! let cautious = EvaluationConfig { k: 0.5, ..Default::default() };
//! let result = evaluate(&doc.problem, &cautious).unwrap();
//! assert_eq!(doc.problem.alternatives[result.selected_index].id, "A3");
//! ```
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod document;
pub mod engine;
pub mod interval;
pub mod plot;
pub mod problem;
pub mod rating;
pub mod report;
pub mod select;
pub mod sensitivity;
pub mod service;
pub mod value;

pub use document::{parse_problem, serialize_problem, DocumentError, Parsed, ProblemDocument};
pub use engine::{
    deneutrosophy, evaluate, score_classical, score_neutro, EngineError, EvaluationConfig, EvaluationResult,
};
pub use interval::{Interval, IntervalRelation};
pub use problem::{validate_problem, Alternative, Criterion, DecisionProblem, Diagnostic, RatingScheme};
pub use rating::{format_rating, parse_rating, RatingParseError};
pub use select::{select, Contention, Selection, TIE_TOLERANCE};
pub use sensitivity::{k_sensitivity, KSegment, KSensitivity};
pub use value::{NeutroValue, ValueError};

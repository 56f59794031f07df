//! First-order logic over graphs: syntax, parsing, evaluation and builders.

mod ast;
mod build;
mod eval;
mod generate;
mod parse;

pub use ast::{Formula, Var};
pub use build::{
    clique_formula, common_neighbor_formula, dist, dist_exact, dist_exact_formula, dist_exact_pair,
    dist_exact_unguarded, dist_formula, extension_sentence, extension_sentence_capped, subgraph_sentence,
    subgraph_sentence_capped, theorem1_sentence, theorem2_sentence, theorem2_sentence_with, PathPredicate,
    DEFAULT_SENTENCE_CAP,
};
pub use eval::{evaluate, evaluate_guarded, evaluate_naive, naive_cost, Assignment, Evaluator, DEFAULT_COST_GUARD};
pub use generate::{random_formula, random_sentence};
pub use parse::{parse, parse_sentence};

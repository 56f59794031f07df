//! Consistency between game values and first-order evaluation.
//!
//! Two graphs agree on every sentence of quantifier depth at most `k` exactly
//! when Duplicator wins the `k`-round game. The check below tests the
//! consequences on a finite battery: if Duplicator wins, every sentence of
//! depth `≤ k` takes the same value on both graphs; if a sentence of depth
//! `d` separates them, Spoiler must win the `d`-round game.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::solve::solve;
use super::state::Winner;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::logic::{evaluate, Assignment, Formula};

/// A sentence on which the game value and the evaluator disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckViolation {
    /// Index of the sentence in the battery.
    pub index: usize,
    pub depth: usize,
    pub value_g: bool,
    pub value_h: bool,
    /// Game value at the sentence's depth.
    pub winner: Winner,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub k: usize,
    /// Game value of the `k`-round game.
    pub winner: Winner,
    pub sentences: usize,
    /// Sentences taking different values on the two graphs.
    pub distinguishing: usize,
    pub violations: Vec<CrosscheckViolation>,
}

impl CrosscheckReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every sentence of `battery` on `g` and `h` and compares with the
/// exact game values. Each sentence must be closed and of depth at most `k`.
pub fn crosscheck_ehrenfeucht(g: &Graph, h: &Graph, k: usize, battery: &[Formula]) -> Result<CrosscheckReport> {
    for (i, f) in battery.iter().enumerate() {
        if !f.is_sentence() {
            return Err(Error::domain(format!("formula {i} has free variables")));
        }
        if f.depth() > k {
            return Err(Error::domain(format!("formula {i} has depth {} > {k}", f.depth())));
        }
    }
    let mut values: BTreeMap<usize, Winner> = BTreeMap::new();
    let mut value_at = |d: usize| -> Result<Winner> {
        if let Some(&w) = values.get(&d) {
            return Ok(w);
        }
        let w = solve(g, h, d)?;
        values.insert(d, w);
        Ok(w)
    };
    let winner = value_at(k)?;
    let empty = Assignment::new();
    let mut report = CrosscheckReport {
        k,
        winner,
        sentences: battery.len(),
        distinguishing: 0,
        violations: Vec::new(),
    };
    for (index, f) in battery.iter().enumerate() {
        let value_g = evaluate(g, f, &empty)?;
        let value_h = evaluate(h, f, &empty)?;
        if value_g == value_h {
            continue;
        }
        report.distinguishing += 1;
        let depth = f.depth();
        let w = value_at(depth)?;
        if w == Winner::DuplicatorWins {
            report.violations.push(CrosscheckViolation {
                index,
                depth,
                value_g,
                value_h,
                winner: w,
            });
        }
    }
    Ok(report)
}

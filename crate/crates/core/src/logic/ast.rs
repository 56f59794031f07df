//! First-order formulas over the graph signature (adjacency and equality).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub type Var = String;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Formula {
    Adjacent(Var, Var),
    Equal(Var, Var),
    Not(Box<Formula>),
    /// Nonempty conjunction.
    And(Vec<Formula>),
    /// Nonempty disjunction.
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn adj(a: impl Into<Var>, b: impl Into<Var>) -> Self {
        Formula::Adjacent(a.into(), b.into())
    }

    pub fn eq(a: impl Into<Var>, b: impl Into<Var>) -> Self {
        Formula::Equal(a.into(), b.into())
    }

    pub fn neq(a: impl Into<Var>, b: impl Into<Var>) -> Self {
        Formula::not(Formula::eq(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; a single conjunct is returned unchanged.
    ///
    /// # Panics
    /// On an empty list.
    pub fn and(mut parts: Vec<Formula>) -> Self {
        assert!(!parts.is_empty(), "empty conjunction");
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        }
    }

    /// Disjunction; a single disjunct is returned unchanged.
    ///
    /// # Panics
    /// On an empty list.
    pub fn or(mut parts: Vec<Formula>) -> Self {
        assert!(!parts.is_empty(), "empty disjunction");
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(v: impl Into<Var>, f: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(f))
    }

    pub fn forall(v: impl Into<Var>, f: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(f))
    }

    /// Nested existential block, outermost variable first.
    pub fn exists_all<S: Into<Var>>(vars: impl IntoIterator<Item = S>, f: Formula) -> Self {
        let vars: Vec<Var> = vars.into_iter().map(Into::into).collect();
        vars.into_iter().rev().fold(f, |acc, v| Formula::exists(v, acc))
    }

    /// Nested universal block, outermost variable first.
    pub fn forall_all<S: Into<Var>>(vars: impl IntoIterator<Item = S>, f: Formula) -> Self {
        let vars: Vec<Var> = vars.into_iter().map(Into::into).collect();
        vars.into_iter().rev().fold(f, |acc, v| Formula::forall(v, acc))
    }

    /// Maximum nesting of quantifiers.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Adjacent(..) | Formula::Equal(..) => 0,
            Formula::Not(f) => f.depth(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::depth).max().unwrap_or(0),
            Formula::Implies(a, b) => a.depth().max(b.depth()),
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.depth(),
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Adjacent(..) | Formula::Equal(..) => 1,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.size(),
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn free_variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut note = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Adjacent(a, b) | Formula::Equal(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Adjacent(a, b) => write!(f, "adj({a},{b})"),
            Formula::Equal(a, b) => write!(f, "{a}={b}"),
            Formula::Not(g) => write!(f, "!{g}"),
            Formula::And(gs) | Formula::Or(gs) => {
                let op = if matches!(self, Formula::And(_)) { " & " } else { " | " };
                f.write_str("(")?;
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(")")
            }
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Exists(v, g) => write!(f, "E {v} . {g}"),
            Formula::Forall(v, g) => write!(f, "A {v} . {g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_and_free_variables() {
        let f = Formula::exists(
            "x",
            Formula::and(vec![
                Formula::adj("x", "y"),
                Formula::forall("z", Formula::eq("z", "x")),
            ]),
        );
        assert_eq!(f.depth(), 2);
        assert_eq!(
            f.free_variables().into_iter().collect::<Vec<_>>(),
            vec!["y".to_string()]
        );
        assert!(!f.is_sentence());
        assert_eq!(Formula::adj("x", "y").depth(), 0);
    }

    #[test]
    fn printing() {
        let f = Formula::exists_all(
            ["x", "y"],
            Formula::or(vec![Formula::adj("x", "y"), Formula::neq("x", "y")]),
        );
        assert_eq!(f.to_string(), "E x . E y . (adj(x,y) | !x=y)");
        assert_eq!(Formula::and(vec![Formula::adj("a", "b")]), Formula::adj("a", "b"));
    }
}

//! Formula evaluation over a finite graph.
//!
//! Two engines share one semantics. [`evaluate_naive`] walks the syntax tree
//! and costs `O(v(Γ)^depth · |φ|)`. [`Evaluator`] compiles the formula into a
//! hash-consed DAG and memoizes every node on the values of its free
//! variables, which keeps deep sentences built from distance formulas
//! tractable. Both refuse work above a leaf-visit budget.

use std::collections::{BTreeMap, HashMap};

use super::ast::{Formula, Var};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default leaf-visit budget.
pub const DEFAULT_COST_GUARD: u64 = 1_000_000_000;

/// Partial map from variable names to vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Var, usize>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<Var>, vertex: usize) -> Self {
        self.0.insert(var.into(), vertex);
        self
    }

    pub fn insert(&mut self, var: impl Into<Var>, vertex: usize) {
        self.0.insert(var.into(), vertex);
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }

    fn validate(&self, g: &Graph, f: &Formula) -> Result<()> {
        for (v, &x) in &self.0 {
            if x >= g.vertex_count() {
                return Err(Error::domain(format!("variable {v} assigned to missing vertex {x}")));
            }
        }
        for v in f.free_variables() {
            if !self.0.contains_key(&v) {
                return Err(Error::domain(format!("free variable {v} is unassigned")));
            }
        }
        Ok(())
    }
}

fn pow_sat(base: u64, exp: usize) -> u64 {
    (0..exp).fold(1u64, |acc, _| acc.saturating_mul(base))
}

/// Worst-case leaf visits of the naive engine.
pub fn naive_cost(n: usize, f: &Formula) -> u64 {
    pow_sat(n as u64, f.depth()).saturating_mul(f.size() as u64)
}

/// Evaluates with the cheaper of the two engines, subject to `guard`.
pub fn evaluate_guarded(g: &Graph, f: &Formula, sigma: &Assignment, guard: u64) -> Result<bool> {
    sigma.validate(g, f)?;
    if naive_cost(g.vertex_count(), f) <= guard {
        return Ok(naive(
            g,
            f,
            &mut sigma.0.iter().map(|(k, &v)| (k.as_str(), v)).collect(),
        ));
    }
    Evaluator::new(f).run(g, sigma, guard)
}

/// Evaluates under the default guard.
pub fn evaluate(g: &Graph, f: &Formula, sigma: &Assignment) -> Result<bool> {
    evaluate_guarded(g, f, sigma, DEFAULT_COST_GUARD)
}

/// Direct recursive evaluation. Used as the reference semantics.
pub fn evaluate_naive(g: &Graph, f: &Formula, sigma: &Assignment) -> Result<bool> {
    sigma.validate(g, f)?;
    let cost = naive_cost(g.vertex_count(), f);
    if cost > DEFAULT_COST_GUARD {
        return Err(Error::capacity(
            "naive evaluation cost",
            cost as usize,
            DEFAULT_COST_GUARD as usize,
        ));
    }
    Ok(naive(
        g,
        f,
        &mut sigma.0.iter().map(|(k, &v)| (k.as_str(), v)).collect(),
    ))
}

fn lookup(env: &[(&str, usize)], v: &str) -> usize {
    env.iter()
        .rev()
        .find(|(k, _)| *k == v)
        .map(|&(_, x)| x)
        .expect("validated assignment")
}

fn naive<'f>(g: &Graph, f: &'f Formula, env: &mut Vec<(&'f str, usize)>) -> bool {
    match f {
        Formula::Adjacent(a, b) => g.is_adjacent(lookup(env, a), lookup(env, b)),
        Formula::Equal(a, b) => lookup(env, a) == lookup(env, b),
        Formula::Not(h) => !naive(g, h, env),
        Formula::And(hs) => hs.iter().all(|h| naive(g, h, env)),
        Formula::Or(hs) => hs.iter().any(|h| naive(g, h, env)),
        Formula::Implies(a, b) => !naive(g, a, env) || naive(g, b, env),
        Formula::Exists(v, h) | Formula::Forall(v, h) => {
            let want = matches!(f, Formula::Exists(..));
            let mut hit = !want;
            for x in 0..g.vertex_count() {
                env.push((v.as_str(), x));
                let r = naive(g, h, env);
                env.pop();
                if r == want {
                    hit = want;
                    break;
                }
            }
            hit
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Op {
    Adj(usize, usize),
    Eq(usize, usize),
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Implies(usize, usize),
    Exists(usize, usize),
    Forall(usize, usize),
}

#[derive(Debug)]
struct Node {
    op: Op,
    /// Free variable slots, ascending.
    free: Vec<usize>,
}

/// Compiled, memoizing evaluator. Reusable across graphs.
#[derive(Debug)]
pub struct Evaluator {
    nodes: Vec<Node>,
    root: usize,
    slots: Vec<Var>,
}

struct Compiler {
    nodes: Vec<Node>,
    index: HashMap<Op, usize>,
    slots: Vec<Var>,
}

impl Compiler {
    fn slot(&mut self, v: &Var) -> usize {
        match self.slots.iter().position(|s| s == v) {
            Some(i) => i,
            None => {
                self.slots.push(v.clone());
                self.slots.len() - 1
            }
        }
    }

    fn intern(&mut self, op: Op) -> usize {
        if let Some(&id) = self.index.get(&op) {
            return id;
        }
        let mut free: Vec<usize> = match &op {
            Op::Adj(a, b) | Op::Eq(a, b) => vec![*a, *b],
            Op::Not(c) => self.nodes[*c].free.clone(),
            Op::And(cs) | Op::Or(cs) => cs.iter().flat_map(|&c| self.nodes[c].free.iter().copied()).collect(),
            Op::Implies(a, b) => self.nodes[*a]
                .free
                .iter()
                .chain(&self.nodes[*b].free)
                .copied()
                .collect(),
            Op::Exists(s, c) | Op::Forall(s, c) => self.nodes[*c].free.iter().copied().filter(|x| x != s).collect(),
        };
        free.sort_unstable();
        free.dedup();
        let id = self.nodes.len();
        self.nodes.push(Node { op: op.clone(), free });
        self.index.insert(op, id);
        id
    }

    fn compile(&mut self, f: &Formula) -> usize {
        let op = match f {
            Formula::Adjacent(a, b) => Op::Adj(self.slot(a), self.slot(b)),
            Formula::Equal(a, b) => Op::Eq(self.slot(a), self.slot(b)),
            Formula::Not(h) => Op::Not(self.compile(h)),
            Formula::And(hs) => Op::And(hs.iter().map(|h| self.compile(h)).collect()),
            Formula::Or(hs) => Op::Or(hs.iter().map(|h| self.compile(h)).collect()),
            Formula::Implies(a, b) => {
                let a = self.compile(a);
                Op::Implies(a, self.compile(b))
            }
            Formula::Exists(v, h) => {
                let s = self.slot(v);
                Op::Exists(s, self.compile(h))
            }
            Formula::Forall(v, h) => {
                let s = self.slot(v);
                Op::Forall(s, self.compile(h))
            }
        };
        self.intern(op)
    }
}

enum Memo {
    None,
    Dense(Vec<u8>),
    Sparse(HashMap<u64, bool>),
}

const DENSE_LIMIT: u64 = 1 << 22;

struct Run<'a> {
    ev: &'a Evaluator,
    g: &'a Graph,
    n: u64,
    env: Vec<usize>,
    memo: Vec<Memo>,
    budget: u64,
    spent: u64,
}

impl Run<'_> {
    fn key(&self, id: usize) -> u64 {
        self.ev.nodes[id]
            .free
            .iter()
            .fold(0u64, |acc, &s| acc * self.n + self.env[s] as u64)
    }

    fn eval(&mut self, id: usize) -> Result<bool> {
        let key = match &self.memo[id] {
            Memo::None => None,
            Memo::Dense(t) => {
                let k = self.key(id);
                match t[k as usize] {
                    0 => Some(k),
                    v => return Ok(v == 2),
                }
            }
            Memo::Sparse(t) => {
                let k = self.key(id);
                match t.get(&k) {
                    Some(&v) => return Ok(v),
                    None => Some(k),
                }
            }
        };
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::capacity(
                "memoized evaluation steps",
                self.spent as usize,
                self.budget as usize,
            ));
        }
        let ev = self.ev;
        let r = match &ev.nodes[id].op {
            Op::Adj(a, b) => self.g.is_adjacent(self.env[*a], self.env[*b]),
            Op::Eq(a, b) => self.env[*a] == self.env[*b],
            Op::Not(c) => !self.eval(*c)?,
            Op::And(cs) => {
                let mut all = true;
                for &c in cs {
                    if !self.eval(c)? {
                        all = false;
                        break;
                    }
                }
                all
            }
            Op::Or(cs) => {
                let mut any = false;
                for &c in cs {
                    if self.eval(c)? {
                        any = true;
                        break;
                    }
                }
                any
            }
            Op::Implies(a, b) => !self.eval(*a)? || self.eval(*b)?,
            Op::Exists(s, c) | Op::Forall(s, c) => {
                let want = matches!(ev.nodes[id].op, Op::Exists(..));
                let saved = self.env[*s];
                let mut hit = !want;
                for x in 0..self.g.vertex_count() {
                    self.env[*s] = x;
                    if self.eval(*c)? == want {
                        hit = want;
                        break;
                    }
                }
                self.env[*s] = saved;
                hit
            }
        };
        if let Some(k) = key {
            match &mut self.memo[id] {
                Memo::Dense(t) => t[k as usize] = 1 + r as u8,
                Memo::Sparse(t) => {
                    t.insert(k, r);
                }
                Memo::None => {}
            }
        }
        Ok(r)
    }
}

impl Evaluator {
    pub fn new(f: &Formula) -> Self {
        let mut c = Compiler {
            nodes: Vec::new(),
            index: HashMap::new(),
            slots: Vec::new(),
        };
        let root = c.compile(f);
        Evaluator {
            nodes: c.nodes,
            root,
            slots: c.slots,
        }
    }

    /// Number of distinct subformulas after sharing.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Worst-case node evaluations on a graph with `n` vertices.
    pub fn cost(&self, n: usize) -> u64 {
        let n = n as u64;
        self.nodes
            .iter()
            .map(|node| {
                let fanout = match &node.op {
                    Op::Exists(..) | Op::Forall(..) => n,
                    Op::And(cs) | Op::Or(cs) => cs.len() as u64,
                    _ => 1,
                };
                pow_sat(n, node.free.len()).saturating_mul(fanout)
            })
            .fold(0u64, u64::saturating_add)
    }

    pub fn evaluate(&self, g: &Graph, sigma: &Assignment) -> Result<bool> {
        self.run(g, sigma, DEFAULT_COST_GUARD)
    }

    /// Evaluates with an explicit step budget.
    pub fn run(&self, g: &Graph, sigma: &Assignment, guard: u64) -> Result<bool> {
        let n = g.vertex_count();
        for (v, &x) in &sigma.0 {
            if x >= n {
                return Err(Error::domain(format!("variable {v} assigned to missing vertex {x}")));
            }
        }
        let mut env = vec![0usize; self.slots.len()];
        for &s in &self.nodes[self.root].free {
            env[s] = sigma
                .get(&self.slots[s])
                .ok_or_else(|| Error::domain(format!("free variable {} is unassigned", self.slots[s])))?;
        }
        let cost = self.cost(n);
        if cost > guard {
            return Err(Error::capacity(
                "memoized evaluation cost",
                cost as usize,
                guard as usize,
            ));
        }
        if n == 0 {
            return Ok(self.empty_domain(self.root));
        }
        let memo = self
            .nodes
            .iter()
            .map(|node| {
                if matches!(node.op, Op::Adj(..) | Op::Eq(..)) {
                    return Memo::None;
                }
                match (n as u64).checked_pow(node.free.len() as u32) {
                    Some(size) if size <= DENSE_LIMIT => Memo::Dense(vec![0; size as usize]),
                    Some(_) => Memo::Sparse(HashMap::new()),
                    None => Memo::None,
                }
            })
            .collect();
        let mut run = Run {
            ev: self,
            g,
            n: n as u64,
            env,
            memo,
            budget: guard,
            spent: 0,
        };
        run.eval(self.root)
    }

    /// Truth value over the empty vertex set; atoms only occur under quantifiers there.
    fn empty_domain(&self, id: usize) -> bool {
        match &self.nodes[id].op {
            Op::Exists(..) => false,
            Op::Forall(..) => true,
            Op::Not(c) => !self.empty_domain(*c),
            Op::And(cs) => cs.iter().all(|&c| self.empty_domain(c)),
            Op::Or(cs) => cs.iter().any(|&c| self.empty_domain(c)),
            Op::Implies(a, b) => !self.empty_domain(*a) || self.empty_domain(*b),
            Op::Adj(..) | Op::Eq(..) => unreachable!("free atom over an empty domain"),
        }
    }
}
